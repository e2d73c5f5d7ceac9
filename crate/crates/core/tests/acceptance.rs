//! Acceptance criteria 1 to 11, one verdict line each.
//!
//! Runs without the libtest harness so every criterion reports even when an earlier one fails.
//! Exit status is non-zero if any criterion fails. Wall-clock budgets are part of each verdict.

use std::time::{Duration, Instant};

use dk2_core::coeffs::{Coeff, MzvIndex};
use dk2_core::dkalg::{five_relations, kernel_of_boundary, six_relations, BasisOrder, Element};
use dk2_core::forms::{
    fake_flatness, kz_connection, reference_pullback, reference_restriction, pullback_phi, restrict_triangle, two_flatness,
};
use dk2_core::holonomy::{path_transport, pentagon_order2, BrwPath, QuadConfig, PENTAGON_THRESHOLD};
use dk2_core::mods::{
    bch_split, breen_residues, congruence_t12, congruence_t23, debar, debar_prime, formal_m0, hexagonator, lneps_degree,
    pentagonator, phi_commute, verify_boundary, BchKind, CommuteKind, ExchangeKind, ModSeries,
};
use dk2_core::series::{brw_residual, drinfeld_phi, PhiVariant};
use dk2_core::Result;

const TOL: f64 = 1e-8;
const MZV_TOL: f64 = 1e-10;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn commutator(x: &Element, y: &Element) -> Element {
    x.mul(y).sub(&y.mul(x))
}

fn c1_associator_order_two() -> Result<Outcome> {
    let (x, y) = (Element::a(2, 1, 2), Element::a(2, 2, 3));
    let phi = drinfeld_phi(&x, &y, 2, PhiVariant::Direct)?;
    let zeta2 = Coeff::zeta(MzvIndex::new(vec![2])?);
    let expected = commutator(&x, &y).scale(&zeta2.neg());
    let exact = *phi.coeff(2) == expected && phi.coeff(1).is_zero();
    let numeric = phi.coeff(2).eval(None, MZV_TOL)?;
    let target = commutator(&x, &y).eval(None, MZV_TOL)?.scale(&(-std::f64::consts::PI.powi(2) / 6.0).into());
    let res = numeric.sub(&target).max_magnitude();
    outcome(exact && res < 1e-12, format!("h^2 = {}, numeric residual {res:.1e}", phi.coeff(2)))
}

fn c2_variant_agreement() -> Result<Outcome> {
    let (x, y) = (Element::a(2, 1, 2), Element::a(2, 2, 3));
    let direct = drinfeld_phi(&x, &y, 5, PhiVariant::Direct)?;
    let a = drinfeld_phi(&x, &y, 5, PhiVariant::CompactA)?;
    let b = drinfeld_phi(&x, &y, 5, PhiVariant::CompactB)?;
    outcome(direct == a && direct == b, format!("direct == compactA: {}, direct == compactB: {} through h^5", direct == a, direct == b))
}

fn c3_brw() -> Result<Outcome> {
    let res = brw_residual(4, MZV_TOL)?;
    outcome(res <= TOL, format!("max residual {res:.2e} through h^4"))
}

fn c4_boundary_contracts() -> Result<Outcome> {
    let mut all: Vec<(String, ModSeries)> = vec![
        ("congruence_t12".into(), congruence_t12(3)?),
        ("congruence_t23".into(), congruence_t23(3)?),
        ("debar".into(), debar(3)?),
        ("debar_prime".into(), debar_prime(3)?),
    ];
    for k in BchKind::ALL {
        all.push((format!("bch_{}", k.name()), bch_split(k, 3)?));
    }
    for k in CommuteKind::ALL {
        all.push((format!("commute_{}", k.name()), phi_commute(k, 3)?));
    }
    for k in ExchangeKind::ALL {
        all.push((format!("exchange_{}", k.name()), k.build(3)?));
    }
    let mut failed = Vec::new();
    let (mut exact, mut worst) = (0, 0.0f64);
    for (name, m) in &all {
        let r = verify_boundary(m, TOL, MZV_TOL)?;
        worst = worst.max(r.max_residual);
        exact += usize::from(r.exact);
        if !r.pass {
            failed.push(name.clone());
        }
    }
    outcome(failed.is_empty(), format!("{} constructors, {exact} exact, worst numeric {worst:.1e}, failed {failed:?}", all.len()))
}

fn c5_hexagonator() -> Result<Outcome> {
    let h = hexagonator(3)?;
    let r = verify_boundary(&h, TOL, MZV_TOL)?;
    let got = h.body().coeff(2).eval(None, MZV_TOL)?;
    let expected = Element::l(2, 1, 2, 3)
        .add(&Element::r(2, 1, 2, 3).scale(&Coeff::from_int(2)))
        .eval(None, MZV_TOL)?
        .scale(&(-std::f64::consts::PI.powi(2) / 6.0).into());
    let body = got.sub(&expected).max_magnitude();
    outcome(r.pass && body <= TOL, format!("boundary residual {:.1e}, h^2 body residual {body:.1e}", r.max_residual))
}

fn c6_breen() -> Result<Outcome> {
    let rows = breen_residues(3, MZV_TOL)?;
    let boundary = rows.iter().map(|o| o.boundary_residual).fold(0.0, f64::max);
    let reduced: Vec<String> =
        rows.iter().map(|o| format!("h^{}: {}", o.order, if o.exact_zero { "0".into() } else { format!("{:.1e}", o.reduced_residual) })).collect();
    let finding = rows.iter().any(|o| !o.exact_zero && o.reduced_residual > TOL);
    let note = if finding { " (nonzero reduction is a finding)" } else { "" };
    outcome(boundary <= TOL, format!("boundary residual {boundary:.1e}; reduction {}{note}", reduced.join(", ")))
}

fn c7_kernels() -> Result<Outcome> {
    let mut pass = true;
    let mut dims = Vec::new();
    for (n, max_d) in [(2u8, 2usize), (3, 1)] {
        for d in 0..=max_d {
            let f = kernel_of_boundary(n, d, BasisOrder::Forward)?;
            let r = kernel_of_boundary(n, d, BasisOrder::Reversed)?;
            pass &= f.kernel_dim == 0 && r.kernel_dim == 0 && f.boundary_rank == r.boundary_rank;
            dims.push(format!("(n={n},d={d}): {}/{}", f.kernel_dim, r.kernel_dim));
        }
    }
    outcome(pass, format!("kernel dims forward/reversed {}", dims.join(" ")))
}

fn c8_five_six() -> Result<Outcome> {
    let five = five_relations()?;
    let six = six_relations()?;
    let nz = five.iter().chain(&six).filter(|x| !x.boundary().is_zero()).count();
    outcome(five.len() == 5 && six.len() == 6 && nz == 0, format!("{} + {} relations, {nz} with nonzero boundary", five.len(), six.len()))
}

fn c9_forms() -> Result<Outcome> {
    let (a, b) = kz_connection()?;
    let (pa, pb) = (pullback_phi(&a)?, pullback_phi(&b)?);
    let (qa, qb) = reference_pullback();
    let pullback = pa == qa && pb == qb;
    let (ra, rb) = restrict_triangle(&pa, &pb)?;
    let (sa, sb) = reference_restriction();
    let restriction = ra == sa && rb == sb;
    let ff = fake_flatness(&pa, &pb)?;
    let (_, tf) = two_flatness(&pa, &pb)?;
    let m_matches = tf.matches_reference_exactly || tf.matches_reference_up_to_normalization;
    let pass = pullback && restriction && ff.pass && m_matches && tf.reduces_to_zero && tf.free_residue_terms > 0;
    outcome(
        pass,
        format!(
            "pullback {pullback}, restriction {restriction}, fake flat {:?}, M termwise {} (normalization {}), reduces to 0 {}, free control {} terms",
            ff.convention.as_deref().unwrap_or("none"),
            m_matches,
            tf.normalization.as_deref().unwrap_or("1"),
            tf.reduces_to_zero,
            tf.free_residue_terms
        ),
    )
}

fn c10_pentagon_numerics() -> Result<Outcome> {
    let cfg = QuadConfig::with_tol(1e-6);
    let eps = [0.1, 0.05, 0.025];
    let rep = pentagon_order2(&eps, &cfg, MZV_TOL)?;
    let mut transport_ok = true;
    for &e in &eps {
        let h = path_transport(&BrwPath::I.spec(e)?, &cfg)?;
        let exact = ((1.0 - e) / e).ln();
        transport_ok &= (h.t_coefficient(1, 2) - exact).abs() <= 10.0 * h.error.max(cfg.tol);
    }
    let residuals: Vec<String> = rep.rows.iter().map(|r| format!("{:.3}", r.residual[2])).collect();
    let below = rep.extrapolated_residual <= PENTAGON_THRESHOLD;
    outcome(
        rep.decreasing && below && transport_ok,
        format!(
            "residuals [{}] decreasing {}, extrapolated {:.1e} (threshold {:.0e}), c_I transport {}",
            residuals.join(", "),
            rep.decreasing,
            rep.extrapolated_residual,
            PENTAGON_THRESHOLD,
            transport_ok
        ),
    )
}

fn c11_pentagonator_assembly() -> Result<Outcome> {
    let pi = pentagonator(2, &formal_m0(2)?)?;
    let r = verify_boundary(&pi, TOL, MZV_TOL)?;
    let lam = lneps_degree(&pi.boundary());
    outcome(r.pass && r.exact && lam == 0, format!("boundary exact {}, residual {:.1e}, ln(eps) degree of boundary {lam}", r.exact, r.max_residual))
}

type Check = fn() -> Result<Outcome>;

fn main() {
    let criteria: [(u32, &str, Check, u64); 11] = [
        (1, "associator order 2", c1_associator_order_two, 1),
        (2, "variant agreement", c2_variant_agreement, 30),
        (3, "BRW residual", c3_brw, 60),
        (4, "boundary contracts", c4_boundary_contracts, 120),
        (5, "hexagonator", c5_hexagonator, 300),
        (6, "Breen", c6_breen, 600),
        (7, "conjecture kernels", c7_kernels, 300),
        (8, "five/six relations", c8_five_six, 10),
        (9, "forms", c9_forms, 120),
        (10, "pentagon numerics", c10_pentagon_numerics, 600),
        (11, "pentagonator assembly", c11_pentagonator_assembly, 300),
    ];
    let mut failures = Vec::new();
    for (id, name, check, budget) in criteria {
        let t0 = Instant::now();
        let result = check();
        let elapsed = t0.elapsed();
        let in_budget = elapsed <= Duration::from_secs(budget);
        let (pass, detail) = match result {
            Ok(o) => (o.pass && in_budget, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let budget_note = if in_budget { String::new() } else { format!(" over {budget} s budget") };
        println!(
            "criterion {id:>2} {name:<22} {} [{:.2} s{budget_note}] {detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        if !pass {
            failures.push(id);
        }
    }
    if failures.is_empty() {
        println!("all 11 criteria pass");
    } else {
        println!("failing criteria: {failures:?}");
        std::process::exit(1);
    }
}
