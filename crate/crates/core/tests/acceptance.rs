//! Acceptance suite: one line per criterion.
//!
//! Runs without the libtest harness so the criteria report in order. A
//! criterion listed in `KNOWN_UNATTAINABLE` is expected to print FAIL; the
//! run only fails when an unexpected criterion fails or a known one passes.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use phasekit::clifford::{clifford_from_affine, intertwining_residual, metaplectic, positivity_preservation_probe};
use phasekit::cyclo::Cyclotomic;
use phasekit::galois::{field_vs_module_stabilizer_gap, verify_factorization, GaloisField};
use phasekit::hudson::{
    antisymmetric_projector_exact, counterexample_mixture, stabilizer_decomposition_feasible, verify_hudson,
    DecompositionResult,
};
use phasekit::linalg::{haar_unitary, random_density, random_hermitian, DenseOperator};
use phasekit::phasespace::{
    enumerate_isotropic, enumerate_maximal_isotropic, find_symplectic_similarity, random_symplectic, symp,
    symplectic_group_single, FormKind,
};
use phasekit::stabilizer::{count_report, enumerate_stabilizer_states, stabilizer_projector_exact, stabilizer_wigner_exact};
use phasekit::weyl::{weyl, weyl_operator, HeisenbergLabel};
use phasekit::wigner::{
    axiomatic_uniqueness_check, moyal_product, parity, phase_point_operator, phase_point_operator_by_sum,
    wigner_complex, wigner_exact, wigner_of_operator, UNIQUENESS_RANK_GAP,
};
use phasekit::{Modulus, PhaseVector, RingVector, Submodule};

/// Criteria whose literal statement is false; see the detail line.
const KNOWN_UNATTAINABLE: &[usize] = &[5];

type Outcome = Result<String, String>;

fn md(d: u64, n: usize) -> Modulus {
    Modulus::new(d, n).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1_counting() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (d, n, subspaces, states) in [(3, 1, 4, 12), (5, 1, 6, 30), (3, 2, 40, 360)] {
        let m = md(d, n);
        let subs = enumerate_maximal_isotropic(m).map_err(|e| e.to_string())?.len();
        let st = enumerate_stabilizer_states(m).map_err(|e| e.to_string())?.len();
        ensure(subs == subspaces && st == states, format!("d={d} n={n}: {subs} subspaces, {st} states"))?;
        let r = count_report(n as u32, n as u32, d, 6561).map_err(|e| e.to_string())?;
        ensure(r.iso == Some(BigUint::from(subspaces)), format!("formula Iso mismatch at d={d} n={n}"))?;
        ensure(r.stabs == Some(BigUint::from(states)), format!("formula Stabs mismatch at d={d} n={n}"))?;
        ensure(r.enumerated == r.iso, format!("enumeration disagrees with formula at d={d} n={n}"))?;
        parts.push(format!("{subs}/{st}"));
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), format!("took {t:?}"))?;
    Ok(format!("subspaces/states {} match formula, {:.2?}", parts.join(", "), t))
}

fn c2_forward() -> Outcome {
    let mut total = 0;
    for (d, n) in [(3, 1), (5, 1), (7, 1), (9, 1), (3, 2)] {
        let m = md(d, n);
        let weight = Rational64::new(1, m.dim() as i64);
        for (desc, _) in enumerate_stabilizer_states(m).map_err(|e| e.to_string())? {
            let p = stabilizer_projector_exact(desc.submodule(), desc.offset()).map_err(|e| e.to_string())?;
            let w = wigner_exact(&p).map_err(|e| e.to_string())?;
            let exact = w.exact().ok_or("no exact values")?;
            let support = desc.support_indices();
            for (i, &v) in exact.iter().enumerate() {
                let expected = if support.binary_search(&i).is_ok() { weight } else { Rational64::zero() };
                ensure(v == expected, format!("d={d} n={n}: W={v} at index {i}"))?;
            }
            ensure(support.len() == m.dim(), "support size")?;
            total += 1;
        }
    }
    Ok(format!("{total} stabilizer states have W = d^-n on d^n points, 0 elsewhere (exact)"))
}

fn c3_converse() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (i, (d, n)) in [(3, 1), (5, 1), (7, 1), (3, 2)].into_iter().enumerate() {
        let r = verify_hudson(md(d, n), 1000, 0xacce97 + i as u64).map_err(|e| e.to_string())?;
        ensure(r.theorem_violations == 0, format!("d={d} n={n}: {:?}", r.violations))?;
        ensure(r.forward_passed == r.forward_total, format!("d={d} n={n}: forward {}/{}", r.forward_passed, r.forward_total))?;
        ensure(r.negative + r.stabilizer_hits == 1000, "unclassified samples")?;
        parts.push(format!("({d},{n}) {} negative {} stabilizer", r.negative, r.stabilizer_hits));
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), format!("took {t:?}"))?;
    Ok(format!("0 violations; {}; {:.2?}", parts.join(", "), t))
}

fn c4_counterexample() -> Outcome {
    let m = md(3, 1);
    let minus = wigner_exact(&antisymmetric_projector_exact(m)).map_err(|e| e.to_string())?;
    let e = minus.exact().ok_or("no exact values")?;
    ensure(e[0] == Rational64::new(-1, 3) && e[1..].iter().all(|&v| v == Rational64::new(1, 6)), "W of P_-")?;

    let (_, mixture) = counterexample_mixture();
    let e = mixture.exact().ok_or("no exact values")?;
    let zeros = e.iter().filter(|v| v.is_zero()).count();
    let sixths = e.iter().filter(|&&v| v == Rational64::new(1, 6)).count();
    ensure(zeros == 3 && sixths == 6, format!("mixture values: {zeros} zeros, {sixths} sixths"))?;

    match stabilizer_decomposition_feasible(&mixture).map_err(|e| e.to_string())? {
        DecompositionResult::Feasible { .. } => Err("LP reported feasible".into()),
        DecompositionResult::Infeasible { certificate, elimination } => {
            // rebuild the system independently and check the certificate
            let big = |r: Rational64| BigRational::new((*r.numer()).into(), (*r.denom()).into());
            let cols: Vec<Vec<BigRational>> = enumerate_stabilizer_states(m)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|(d, _)| stabilizer_wigner_exact(d).unwrap().exact().unwrap().iter().map(|&r| big(r)).collect())
                .collect();
            ensure(cols.len() == 12, "12 stabilizer indicators")?;
            let y = &certificate.y;
            ensure(y.len() == 10, "certificate length")?;
            for c in &cols {
                let s: BigRational = (0..9).map(|i| &y[i] * &c[i]).sum::<BigRational>() + &y[9];
                ensure(!s.is_negative(), "certificate has y^T A < 0")?;
            }
            let yb: BigRational = (0..9).map(|i| &y[i] * big(e[i])).sum::<BigRational>() + &y[9] * BigRational::one();
            ensure(yb.is_negative(), "certificate has y^T b >= 0")?;
            ensure(elimination.surviving.len() == 3, format!("{} surviving lines", elimination.surviving.len()))?;
            ensure(!elimination.surviving_feasible, "surviving lines reproduce the grid")?;
            Ok(format!("W_P- exact, mixture {{0 x3, 1/6 x6}}, LP infeasible with verified certificate, 3 surviving lines"))
        }
    }
}

fn momentum_marginal(x: &DenseOperator, p: i64) -> f64 {
    let m = x.modulus();
    let d = m.d() as i64;
    let dim = m.dim();
    let phi: Vec<Complex64> =
        (0..dim).map(|y| phasekit::zmod::root_of_unity(p * y as i64, d as u32) / (dim as f64).sqrt()).collect();
    let mut acc = Complex64::zero();
    for r in 0..dim {
        for c in 0..dim {
            acc += phi[r].conj() * x.matrix()[(r, c)] * phi[c];
        }
    }
    acc.re
}

fn c5_calculus() -> Outcome {
    let tol = 1e-11;
    let mut rng = ChaCha8Rng::seed_from_u64(0xca1c);
    let mut worst: f64 = 0.0;
    for d in [3u64, 5] {
        let m = md(d, 1);
        let dd = d as usize;
        for _ in 0..200 {
            let x = random_hermitian(m, &mut rng);
            let y = random_hermitian(m, &mut rng);
            let (wx, wy) = (wigner_of_operator(&x), wigner_of_operator(&y));
            // overlap and normalization
            let lhs = x.mul(&y).trace().re / d as f64;
            let rhs: f64 = wx.values().iter().zip(wy.values()).map(|(a, b)| a * b).sum();
            worst = worst.max((lhs - rhs).abs()).max((wx.sum() - x.trace().re).abs());
            // marginals
            for q in 0..dd {
                let s: f64 = (0..dd).map(|p| wx.values()[p * dd + q]).sum();
                worst = worst.max((s - x.matrix()[(q, q)].re).abs());
            }
            for p in 0..dd {
                let s: f64 = (0..dd).map(|q| wx.values()[p * dd + q]).sum();
                worst = worst.max((s - momentum_marginal(&x, p as i64)).abs());
            }
            // factorization
            let xy = x.kron(&y).map_err(|e| e.to_string())?;
            let wxy = wigner_of_operator(&xy);
            for i in 0..wxy.values().len() {
                let v = wxy.point(i);
                let a = PhaseVector::new(d as u32, &[v.p()[0] as i64], &[v.q()[0] as i64]).index();
                let b = PhaseVector::new(d as u32, &[v.p()[1] as i64], &[v.q()[1] as i64]).index();
                worst = worst.max((wxy.values()[i] - wx.values()[a] * wy.values()[b]).abs());
            }
            // parity
            let wp = wigner_of_operator(&parity(m).to_dense().conjugate(&x));
            for i in 0..wp.values().len() {
                worst = worst.max((wp.values()[i] - wx.value(&wx.point(i).neg())).abs());
            }
            // Moyal product
            let star = moyal_product(&wigner_complex(&x), &wigner_complex(&y)).map_err(|e| e.to_string())?;
            worst = worst.max(star.max_abs_diff(&wigner_complex(&x.mul(&y))));
        }
    }
    ensure(worst < tol, format!("numerical identities off by {worst:e}"))?;

    // exhaustive exact identities at d = 3
    let m = md(3, 1);
    let pts: Vec<PhaseVector> = (0..9).map(|i| PhaseVector::from_index(m, i)).collect();
    let by_sum: Vec<_> = pts.iter().map(|a| phase_point_operator_by_sum(m, a)).collect();
    for (a, op) in pts.iter().zip(&by_sum) {
        ensure(op.exact_eq(&phase_point_operator(m, a).operator.to_exact()), "A(a) = w(2a) A(0)")?;
    }
    let (mut literal_ok, mut corrected_ok) = (0, 0);
    for (i, a) in pts.iter().enumerate() {
        for (j, b) in pts.iter().enumerate() {
            let prod = by_sum[i].mul(&by_sum[j]);
            let w = weyl(m, &a.scale(2).sub(&b.scale(2)));
            literal_ok += usize::from(prod.exact_eq(&w.to_exact()));
            let phase = 2 * symp(3, b.coords(), a.coords()) as i64;
            corrected_ok += usize::from(prod.exact_eq(&w.times_phase(phase).to_exact()));
        }
    }
    let (mut tri_literal, mut tri_corrected) = (0, 0);
    let mono: Vec<_> = pts.iter().map(|a| phase_point_operator(m, a).operator).collect();
    for (u, au) in pts.iter().zip(&mono) {
        for (v, av) in pts.iter().zip(&mono) {
            for (w, aw) in pts.iter().zip(&mono) {
                let tr = au.compose(av).compose(aw).trace();
                let s = symp(3, v.coords(), u.coords()) + symp(3, u.coords(), w.coords()) + symp(3, w.coords(), v.coords());
                tri_literal += usize::from(tr.exact_eq(&Cyclotomic::root(3, s as i64)));
                tri_corrected += usize::from(tr.exact_eq(&Cyclotomic::root(3, 2 * s as i64)));
            }
        }
    }
    let detail = format!(
        "overlap/normalization/marginals/factorization/parity/Moyal within {worst:.1e} on 400 pairs; \
         A(a)=w(2a)A(0) exact on 9/9; printed A(a)A(b)=w(2a-2b) holds on {literal_ok}/81, \
         with factor chi(2[b,a]) on {corrected_ok}/81; printed triple trace holds on {tri_literal}/729, \
         with doubled exponent on {tri_corrected}/729"
    );
    ensure(corrected_ok == 81 && tri_corrected == 729, detail.clone())?;
    if literal_ok == 81 && tri_literal == 729 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn unit_phase(a: &DenseOperator, b: &DenseOperator) -> f64 {
    let dim = a.matrix().nrows() as f64;
    let ip: Complex64 = b.matrix().iter().zip(a.matrix().iter()).map(|(x, y)| x.conj() * y).sum();
    (ip / dim).norm()
}

fn c6_clifford() -> Outcome {
    let tol = 1e-11;
    let mut rng = ChaCha8Rng::seed_from_u64(0xc11f);
    let mut worst_inter: f64 = 0.0;
    let mut worst_phase: f64 = 0.0;
    let mut worst_prop: f64 = 0.0;
    let mut worst_cov: f64 = 0.0;
    let mut count = 0;
    let mut groups: Vec<(Modulus, Vec<phasekit::SymplecticMatrix>)> = vec![(md(3, 1), symplectic_group_single(3))];
    for d in [5, 7] {
        let m = md(d, 1);
        groups.push((m, (0..100).map(|_| random_symplectic(m, &mut rng)).collect()));
    }
    ensure(groups[0].1.len() == 24, "24 elements of Sp(2, Z_3)")?;
    for (m, group) in &groups {
        let unitaries: Vec<DenseOperator> = group.iter().map(|s| metaplectic(s).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
        for (s, u) in group.iter().zip(&unitaries) {
            worst_inter = worst_inter.max(intertwining_residual(u, s, &PhaseVector::zero(*m)));
            count += 1;
        }
        let pairs: Vec<(usize, usize)> = if m.d() == 3 {
            (0..24).flat_map(|i| (0..24).map(move |j| (i, j))).collect()
        } else {
            (0..100).map(|i| (i, (i + 1) % 100)).collect()
        };
        for (i, j) in pairs {
            let st = metaplectic(&group[i].compose(&group[j])).map_err(|e| e.to_string())?;
            let prod = unitaries[i].mul(&unitaries[j]);
            worst_phase = worst_phase.max((unit_phase(&prod, &st) - 1.0).abs());
            worst_prop = worst_prop.max(prod.proportionality(&st).1);
        }
        for (s, _) in group.iter().zip(&unitaries).take(30) {
            let a = PhaseVector::from_index(*m, rng.random_range(0..m.phase_points()));
            let c = clifford_from_affine(s, &a).map_err(|e| e.to_string())?;
            worst_inter = worst_inter.max(intertwining_residual(&c.unitary, s, &a));
            let rho = random_density(*m, &mut rng);
            let (w0, w1) = (wigner_of_operator(&rho), wigner_of_operator(&c.unitary.conjugate(&rho)));
            for i in 0..w0.values().len() {
                let target = s.apply(&w0.point(i)).add(&a);
                worst_cov = worst_cov.max((w1.value(&target) - w0.values()[i]).abs());
            }
        }
    }
    let detail = format!(
        "{count} syntheses; intertwining {worst_inter:.1e}, projective phase modulus {worst_phase:.1e}, \
         proportionality {worst_prop:.1e}, covariance {worst_cov:.1e}"
    );
    ensure(worst_inter < tol && worst_phase < tol && worst_prop < tol && worst_cov < tol, detail.clone())?;
    Ok(detail)
}

fn c7_dynamics() -> Outcome {
    let m3 = md(3, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(0xd7a);
    let mut probes = 0;
    let mut inputs = 0;
    for (k, s) in symplectic_group_single(3).iter().enumerate() {
        let a = PhaseVector::from_index(m3, k % 9);
        let c = clifford_from_affine(s, &a).map_err(|e| e.to_string())?;
        let r = positivity_preservation_probe(&c.unitary, 50, k as u64).map_err(|e| e.to_string())?;
        ensure(r.violations.is_empty(), format!("Clifford probe {k} violated: {:?}", r.worst()))?;
        ensure(r.min_value_mismatches == 0, format!("Clifford probe {k} changed a minimum"))?;
        probes += 1;
        inputs += r.inputs_tested;
    }
    let m5 = md(5, 1);
    for k in 0..5 {
        let c = phasekit::clifford::random_clifford(m5, &mut rng).map_err(|e| e.to_string())?;
        let r = positivity_preservation_probe(&c.unitary, 50, 100 + k).map_err(|e| e.to_string())?;
        ensure(r.violations.is_empty(), format!("d=5 Clifford probe {k} violated"))?;
        probes += 1;
        inputs += r.inputs_tested;
    }
    let mut worst_of_best: f64 = f64::NEG_INFINITY;
    for k in 0..20 {
        let u = haar_unitary(m3, &mut rng);
        let r = positivity_preservation_probe(&u, 50, 200 + k).map_err(|e| e.to_string())?;
        let min = r.worst().map(|v| v.min).unwrap_or(0.0);
        ensure(min < -1e-6, format!("Haar unitary {k}: most negative image {min:e}"))?;
        worst_of_best = worst_of_best.max(min);
    }
    Ok(format!(
        "{probes} Clifford probes over {inputs} inputs without violations; 20/20 Haar unitaries reach min W <= {worst_of_best:.3e}"
    ))
}

fn c8_irreducibility() -> Outcome {
    let mut parts = Vec::new();
    for (d, n) in [(3u64, 1usize), (3, 2), (5, 1), (5, 2)] {
        let m = md(d, n);
        let mut sum = Rational64::zero();
        for i in 0..m.phase_points() {
            for t in 0..d as i64 {
                let w = weyl_operator(m, &HeisenbergLabel::new(PhaseVector::from_index(m, i), t)).map_err(|e| e.to_string())?;
                let tr = w.trace();
                let sq = (&tr * &tr.conj()).as_rational().ok_or("|tr|^2 not rational")?;
                sum += sq;
            }
        }
        let avg = sum / Rational64::from_integer(m.phase_points() as i64 * d as i64);
        ensure(avg.is_one(), format!("d={d} n={n}: average {avg}"))?;
        parts.push(format!("({d},{n})"));
    }
    Ok(format!("average |tr w(a,t)|^2 = 1 exactly for {}", parts.join(" ")))
}

fn c9_uniqueness() -> Outcome {
    let r = axiomatic_uniqueness_check(3).map_err(|e| e.to_string())?;
    let detail = format!(
        "d=3: nullity {}, gap {:.2e}, span residual {:.1e}, marginal residual {:.1e}",
        r.nullity, r.gap, r.span_residual, r.marginal_residual
    );
    ensure(r.nullity == 2 && r.gap > UNIQUENESS_RANK_GAP && r.span_residual < 1e-8 && r.marginal_residual < 1e-10, detail.clone())?;
    let r5 = axiomatic_uniqueness_check(5).map_err(|e| e.to_string())?;
    ensure(r5.nullity == 2 && r5.marginal_residual < 1e-10, format!("d=5: nullity {}", r5.nullity))?;
    Ok(format!("{detail}; d=5 also nullity 2"))
}

fn c10_galois() -> Outcome {
    let f = verify_factorization(3, 2).map_err(|e| e.to_string())?;
    ensure(f.labels == 81 && f.exact(), format!("{f:?}"))?;
    let g = field_vs_module_stabilizer_gap(3, 2).map_err(|e| e.to_string())?;
    ensure(g.field_states == 90 && g.module_states == 360, format!("{} vs {}", g.field_states, g.module_states))?;
    ensure(g.ratio == (4, 1) && g.ratio_bound_holds && g.ratio_matches_formula, "ratio")?;
    ensure(g.images_maximal_isotropic && g.states_coincide, "field lines do not map onto stabilizer states")?;
    // Bell-type subspace: closed under Z_3, not under multiplication by t
    let field = GaloisField::new(3, 2, None).map_err(|e| e.to_string())?;
    let bell = Submodule::closure(3, 4, &[RingVector::new(3, &[0, 0, 1, 1]), RingVector::new(3, &[1, 2, 0, 0])]);
    ensure(bell.is_maximal_isotropic(), "Bell subspace is not maximal isotropic")?;
    let t = field.monomial(1);
    let escape = bell.elements().find(|e| {
        let (a, b) = field.iota_inverse(&PhaseVector::from_ring_vector(e.clone()));
        !bell.contains(field.iota(&field.mul(&t, &a), &field.mul(&t, &b)).as_ring_vector())
    });
    let escape = escape.ok_or("Bell subspace is F_9-closed")?;
    Ok(format!("81/81 labels exact; 90 vs 360 states, ratio 4 >= 3; Bell element {escape} leaves under t"))
}

fn c11_complements() -> Outcome {
    let mut checked = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0de);
    for (d, n) in [(3u64, 1usize), (5, 1), (7, 1), (9, 1), (3, 2), (15, 1)] {
        let m = md(d, n);
        let total = m.phase_points();
        let mut subs = if d == 15 { Vec::new() } else { enumerate_isotropic(m).map_err(|e| e.to_string())? };
        for _ in 0..50 {
            let k = rng.random_range(1..=3);
            let gens: Vec<RingVector> = (0..k)
                .map(|_| RingVector::new(d as u32, &(0..2 * n).map(|_| rng.random_range(0..d as i64)).collect::<Vec<_>>()))
                .collect();
            subs.push(Submodule::closure(d as u32, 2 * n, &gens));
        }
        for s in &subs {
            let c = s.complement(FormKind::Symplectic);
            ensure(s.len() * c.len() == total, format!("d={d} n={n}: |M|={} |M^perp|={}", s.len(), c.len()))?;
            checked += 1;
        }
    }
    let mut pairs = 0;
    for (d, n) in [(9u64, 1usize), (3, 2)] {
        let m = md(d, n);
        while pairs < if d == 9 { 100 } else { 200 } {
            let a = PhaseVector::from_index(m, rng.random_range(0..m.phase_points()));
            let b = PhaseVector::from_index(m, rng.random_range(0..m.phase_points()));
            if a.order() != b.order() {
                continue;
            }
            let s = find_symplectic_similarity(&a, &b).map_err(|e| e.to_string())?;
            ensure(s.is_symplectic() && s.apply(&a) == b, format!("similarity failed for {a:?} -> {b:?}"))?;
            pairs += 1;
        }
    }
    Ok(format!("|M||M^perp| = d^2n on {checked} submodules; 100 similarity pairs each in Z_9^2 and Z_3^4"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("counting", c1_counting),
        ("Hudson forward", c2_forward),
        ("Hudson converse", c3_converse),
        ("mixed-state counterexample", c4_counterexample),
        ("Wigner calculus", c5_calculus),
        ("Clifford structure", c6_clifford),
        ("positivity dynamics", c7_dynamics),
        ("irreducibility", c8_irreducibility),
        ("uniqueness", c9_uniqueness),
        ("Galois embedding", c10_galois),
        ("complements and similarity", c11_complements),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let k = i + 1;
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let known = KNOWN_UNATTAINABLE.contains(&k);
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        let note = if known { " (known: literal statement is false)" } else { "" };
        println!("criterion {k:>2} {status} {name}{note} [{:.1?}]: {detail}", start.elapsed());
        if outcome.is_ok() == known {
            unexpected.push(k);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
