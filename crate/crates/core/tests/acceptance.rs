//! One line per acceptance criterion; exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use monoalg::derivations::{classify_lnd, degree_report, hilbert_ideal, lnd_degrees, non_liftable_witness, roots_of_ideal, LndCase};
use monoalg::linalg::{q, Q};
use monoalg::oracle::{all_derivations, compare_batch, compare_with_classification, random_full_cofinite_ideal};
use monoalg::quotient::{aut_generators, toric_automorphisms, QuotientAlgebra};
use monoalg::{LatticeVector, MonomialIdeal, RationalMatrix};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 roots regression", roots_regression),
        ("2 three-case degree coloring", degree_coloring),
        ("3 x^4 generators", x4_generators),
        ("4 (x^2,y^2) generators and toric group", x2y2_generators),
        ("5 (x^2,xy,y^2) derivations and swap identity", non_solvable_example),
        ("6 oracle equivalence fuzz", oracle_fuzz),
        ("7 non-liftability witness", non_liftability_witness),
        ("8 property suites", property_suites),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({secs:.2}s)"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.2}s): {e}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn roots_regression() -> Check {
    let s = octant(2);
    let got: BTreeSet<LatticeVector> = roots_of_ideal(&ideal(&s, &[&[2, 5], &[3, 2], &[5, 0]]), 8).all().into_iter().collect();
    let want: BTreeSet<LatticeVector> = (2..=8).map(|l| v(&[l, -1])).collect();
    ensure(got == want, || format!("(x2y5,x3y2,x5): got {got:?}"))?;

    let got: BTreeSet<LatticeVector> = roots_of_ideal(&ideal(&s, &[&[0, 5], &[3, 2], &[5, 0]]), 8).all().into_iter().collect();
    let want: BTreeSet<LatticeVector> = (3..=8).flat_map(|l| [v(&[l, -1]), v(&[-1, l])]).collect();
    ensure(got == want, || format!("(y5,x3y2,x5): got {got:?}"))
}

/// Rows run from y = 7 down to y = -1, columns from x = -1 to 7.
const I1_FIGURE: [&str; 9] = [
    ".oG######", ".oG######", ".oG######", ".oGG#####", ".oGG#####", ".oGG#####", ".oGGGG###", ".oBBBBBBB",
    ".........",
];
const I2_FIGURE: [&str; 9] = [
    ".B#######", ".B#######", ".B#######", ".BGG#####", ".BGG#####", ".BGG#####", ".BGGGG###", ".oGGGG###",
    "...RRRRRR",
];
const I3_FIGURE: [&str; 9] = [
    "R########", "R########", "R########", "RGGG#####", "RGGG#####", ".GGG#####", ".GGGGG###", ".oGGGG###",
    "....RRRRR",
];

/// Figure cell at `(x, y)` in `[-1, 8]^2`; the pattern is constant past 7.
fn expected_cell(figure: &[&str; 9], x: i64, y: i64) -> char {
    let (x, y) = (x.min(7), y.min(7));
    figure[(7 - y) as usize].as_bytes()[(x + 1) as usize] as char
}

fn cell(ideal: &MonomialIdeal, alpha: &LatticeVector) -> Result<char, String> {
    if ideal.in_supp(alpha) {
        return Ok('#');
    }
    let Some(report) = degree_report(ideal, alpha).map_err(|e| e.to_string())? else {
        return Ok('.');
    };
    for p in &report.representatives {
        let c = classify_lnd(ideal, alpha, p).map_err(|e| e.to_string())?;
        ensure(c.case == report.case && c.is_lnd, || format!("classify_lnd disagrees at {alpha}"))?;
    }
    Ok(match report.case {
        LndCase::Root => 'R',
        LndCase::InnerEscaping => 'G',
        LndCase::InnerConstrained if report.g_basis.is_empty() => 'o',
        LndCase::InnerConstrained => 'B',
    })
}

fn degree_coloring() -> Check {
    let s = octant(2);
    let cases = [
        ("I1", ideal(&s, &[&[2, 5], &[3, 2], &[5, 1]]), &I1_FIGURE),
        ("I2", ideal(&s, &[&[1, 5], &[3, 2], &[5, 0]]), &I2_FIGURE),
        ("I3", ideal(&s, &[&[0, 5], &[3, 2], &[5, 0]]), &I3_FIGURE),
    ];
    for (name, i, figure) in cases {
        let mut colored = BTreeSet::new();
        for y in -1..=8 {
            for x in -1..=8 {
                let alpha = v(&[x, y]);
                let got = cell(&i, &alpha)?;
                let want = expected_cell(figure, x, y);
                ensure(got == want, || format!("{name} at {alpha}: got {got}, figure shows {want}"))?;
                if matches!(got, 'R' | 'G' | 'B') {
                    colored.insert(alpha);
                }
            }
        }
        let degrees = lnd_degrees(&i, Some(8)).map_err(|e| e.to_string())?;
        for r in degrees.degrees.iter().filter(|r| r.alpha.coords().iter().all(|c| *c >= BigInt::from(-1))) {
            ensure(colored.contains(&r.alpha), || format!("{name}: lnd_degrees lists uncolored {}", r.alpha))?;
        }
    }
    Ok(())
}

fn matrix(rows: &[&[Q]]) -> RationalMatrix {
    RationalMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
}

fn x4_generators() -> Check {
    let s = octant(1);
    let a = QuotientAlgebra::new(ideal(&s, &[&[4]])).map_err(|e| e.to_string())?;
    let gens = aut_generators(&a).map_err(|e| e.to_string())?;
    let weights: Vec<LatticeVector> = (0..4).map(|i| v(&[i])).collect();
    ensure(gens.torus_weights == weights, || format!("weights {:?}", gens.torus_weights))?;
    ensure(gens.unipotent_families.len() == 2, || format!("{} families", gens.unipotent_families.len()))?;
    ensure(gens.toric.len() == 1 && gens.first_octant_certified, || "toric group should be trivial".into())?;

    let (z, o) = (q(0), q(1));
    let t = q(2);
    let torus = a.torus_matrix(std::slice::from_ref(&t)).map_err(|e| e.to_string())?;
    let want_torus = RationalMatrix::diagonal(vec![o.clone(), t.clone(), &t * &t, &t * &t * &t]);
    ensure(torus == want_torus, || format!("torus at t=2: {torus}"))?;

    for r in [q(1), q(2), q(-3)] {
        let f1 = gens.unipotent_families.iter().find(|f| f.alpha == v(&[1])).ok_or("no family at 1")?;
        let want = matrix(&[
            &[o.clone(), z.clone(), z.clone(), z.clone()],
            &[z.clone(), o.clone(), z.clone(), z.clone()],
            &[z.clone(), r.clone(), o.clone(), z.clone()],
            &[z.clone(), &r * &r, q(2) * &r, o.clone()],
        ]);
        let got = f1.matrix.specialize(&r);
        ensure(f1.direction == rp(&[1]) && got == want, || format!("family at 1, r={r}: {got}"))?;

        let f2 = gens.unipotent_families.iter().find(|f| f.alpha == v(&[2])).ok_or("no family at 2")?;
        let want = matrix(&[
            &[o.clone(), z.clone(), z.clone(), z.clone()],
            &[z.clone(), o.clone(), z.clone(), z.clone()],
            &[z.clone(), z.clone(), o.clone(), z.clone()],
            &[z.clone(), r.clone(), z.clone(), o.clone()],
        ]);
        let got = f2.matrix.specialize(&r);
        ensure(f2.direction == rp(&[1]) && got == want, || format!("family at 2, s={r}: {got}"))?;
    }
    Ok(())
}

fn x2y2_generators() -> Check {
    let s = octant(2);
    let a = QuotientAlgebra::new(ideal(&s, &[&[2, 0], &[0, 2]])).map_err(|e| e.to_string())?;
    let basis: Vec<LatticeVector> = vec![v(&[0, 0]), v(&[0, 1]), v(&[1, 0]), v(&[1, 1])];
    ensure(a.basis().elements() == basis.as_slice(), || format!("basis order {:?}", a.basis().elements()))?;
    let gens = aut_generators(&a).map_err(|e| e.to_string())?;
    let (z, o) = (q(0), q(1));
    let mut emitted = Vec::new();
    for (t1, t2) in [(q(2), q(3)), (q(-1), Q::new(1.into(), 5.into()))] {
        let torus = a.torus_matrix(&[t1.clone(), t2.clone()]).map_err(|e| e.to_string())?;
        let want = RationalMatrix::diagonal(vec![o.clone(), t2.clone(), t1.clone(), &t1 * &t2]);
        ensure(torus == want, || format!("torus: {torus}"))?;
        emitted.push(torus);
    }
    ensure(gens.unipotent_families.len() == 2, || format!("{} families", gens.unipotent_families.len()))?;
    for r in [q(1), q(4), Q::new((-2).into(), 3.into())] {
        let f1 = gens.unipotent_families.iter().find(|f| f.alpha == v(&[1, 0])).ok_or("no family at (1,0)")?;
        let mut want = RationalMatrix::identity(4);
        want[(3, 1)] = r.clone();
        let got = f1.matrix.specialize(&r);
        ensure(f1.direction == rp(&[0, 1]) && got == want, || format!("family at (1,0): {got}"))?;
        let f2 = gens.unipotent_families.iter().find(|f| f.alpha == v(&[0, 1])).ok_or("no family at (0,1)")?;
        let mut want = RationalMatrix::identity(4);
        want[(3, 2)] = r.clone();
        let got = f2.matrix.specialize(&r);
        ensure(f2.direction == rp(&[1, 0]) && got == want, || format!("family at (0,1): {got}"))?;
        emitted.push(f1.matrix.specialize(&r));
        emitted.push(f2.matrix.specialize(&r));
    }
    let toric = toric_automorphisms(&a);
    ensure(toric.len() == 2 && toric[0].is_identity(), || format!("toric group of order {}", toric.len()))?;
    let swap = toric[1].matrix();
    let want_swap = matrix(&[
        &[o.clone(), z.clone(), z.clone(), z.clone()],
        &[z.clone(), z.clone(), o.clone(), z.clone()],
        &[z.clone(), o.clone(), z.clone(), z.clone()],
        &[z.clone(), z.clone(), z.clone(), o.clone()],
    ]);
    ensure(swap == want_swap, || format!("swap: {swap}"))?;
    ensure(swap.mul(&swap).is_identity(), || "swap is not an involution".into())?;
    ensure(a.is_algebra_automorphism(&swap), || "swap is not an automorphism".into())?;
    ensure(emitted.iter().all(RationalMatrix::is_lower_triangular), || "an emitted generator is not lower triangular".into())?;
    ensure(!swap.is_lower_triangular(), || "swap is lower triangular".into())
}

fn block(m: &RationalMatrix) -> [[Q; 2]; 2] {
    [[m[(1, 1)].clone(), m[(1, 2)].clone()], [m[(2, 1)].clone(), m[(2, 2)].clone()]]
}

fn non_solvable_example() -> Check {
    let s = octant(2);
    let i = ideal(&s, &[&[2, 0], &[1, 1], &[0, 2]]);
    let a = QuotientAlgebra::new(i.clone()).map_err(|e| e.to_string())?;
    let dim = all_derivations(&a).dim;
    ensure(dim == 4, || format!("dim Der = {dim}"))?;
    let degrees = lnd_degrees(&i, None).map_err(|e| e.to_string())?;
    let got: Vec<(LatticeVector, usize)> = degrees.degrees.iter().map(|r| (r.alpha.clone(), r.effective_dim)).collect();
    ensure(got == vec![(v(&[-1, 1]), 1), (v(&[1, -1]), 1)], || format!("lnd degrees {got:?}"))?;

    // basis 1, y, x; columns are images: φ(x, y) = (x, x - y), ψ(x, y) = (x - y, y)
    let phi = RationalMatrix::from_i64_rows(&[&[1, 0, 0], &[0, -1, 0], &[0, 1, 1]]);
    let psi = RationalMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, -1], &[0, 0, 1]]);
    let swap = RationalMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
    ensure(a.is_algebra_automorphism(&phi) && a.is_algebra_automorphism(&psi), || "φ or ψ is not an automorphism".into())?;
    let toric = toric_automorphisms(&a);
    ensure(toric.len() == 2 && toric[1].matrix() == swap, || "toric group is not {id, swap}".into())?;

    // swap is reachable from the emitted generators
    let gens = aut_generators(&a).map_err(|e| e.to_string())?;
    let lower = gens.unipotent_families.iter().find(|f| f.alpha == v(&[1, -1])).ok_or("no family at (1,-1)")?;
    let upper = gens.unipotent_families.iter().find(|f| f.alpha == v(&[-1, 1])).ok_or("no family at (-1,1)")?;
    let word = lower
        .matrix
        .specialize(&q(1))
        .mul(&upper.matrix.specialize(&q(-1)))
        .mul(&lower.matrix.specialize(&q(1)))
        .mul(&a.torus_matrix(&[q(-1), q(1)]).map_err(|e| e.to_string())?);
    ensure(word == swap, || format!("generator word gives {word}"))?;
    println!("  note: swap = exp(∂_(1,-1)) exp(-∂_(-1,1)) exp(∂_(1,-1)) diag(t=(-1,1)) holds");

    let inv = phi.inverse().ok_or("φ is singular")?;
    let conj = inv.mul(&psi).mul(&phi);
    ensure(conj == swap, || {
        let b = block(&conj);
        format!(
            "φ⁻¹ψφ has 2x2 block [[{}, {}], [{}, {}]] with det {}, swap has det -1",
            b[0][0], b[0][1], b[1][0], b[1][1], det2(&b)
        )
    })
}

fn det2(b: &[[Q; 2]; 2]) -> Q {
    &b[0][0] * &b[1][1] - &b[0][1] * &b[1][0]
}

fn oracle_fuzz() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut ideals = Vec::new();
    for k in 0..240 {
        let n = if k % 3 == 2 { 3 } else { 2 };
        ideals.push(random_full_cofinite_ideal(&mut rng, &octant(n), 60));
    }
    for i in &ideals {
        let c = i.complement().map_err(|e| e.to_string())?;
        ensure(i.is_full() && c.len() <= 60, || format!("bad corpus ideal {:?}", i.generators()))?;
    }
    let reports = compare_batch(&ideals).map_err(|e| e.to_string())?;
    for (i, r) in ideals.iter().zip(&reports) {
        ensure(r.mismatches().is_empty() && r.extras.is_empty(), || {
            format!("ideal {:?}: mismatches {:?}, extras {:?}", i.generators(), r.mismatches(), r.extras)
        })?;
    }
    let elapsed = start.elapsed();
    println!("  note: {} ideals compared in {:.2}s", ideals.len(), elapsed.as_secs_f64());
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))
}

fn non_liftability_witness() -> Check {
    let s = veronese();
    let w = non_liftable_witness(&s).map_err(|e| e.to_string())?;
    ensure(w.alpha == v(&[0, 2]), || format!("α = {}", w.alpha))?;
    ensure(w.violated_constraints == vec![(dv(&[2, -1]), BigInt::from(-2))], || format!("{:?}", w.violated_constraints))?;
    let ih = hilbert_ideal(&s).map_err(|e| e.to_string())?;
    let report = compare_with_classification(&ih).map_err(|e| e.to_string())?;
    ensure(!report.first_octant && report.extras.contains(&v(&[0, 2])), || format!("extras {:?}", report.extras))
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in [2, 3] {
        for _ in 0..20 {
            check_duality(&random_cone_generators(&mut rng, n))?;
            let s = random_saturated_semigroup(&mut rng, n);
            check_hilbert_irreducible(&s)?;
        }
    }
    for s in [octant(2), octant(3), veronese(), square_cone()] {
        check_duality(s.generators())?;
        check_hilbert_irreducible(&s)?;
    }
    for n in [1, 2, 3] {
        for _ in 0..10 {
            check_supp_box(&random_octant_ideal(&mut rng, n, 6), 0, 8)?;
        }
    }
    check_supp_box(&hilbert_ideal(&veronese()).map_err(|e| e.to_string())?, 0, 8)?;

    let o1 = octant(1);
    let o2 = octant(2);
    let algebras = [
        ideal(&o1, &[&[4]]),
        ideal(&o2, &[&[2, 0], &[0, 2]]),
        ideal(&o2, &[&[2, 0], &[1, 1], &[0, 2]]),
        ideal(&o2, &[&[0, 5], &[3, 2], &[5, 0]]),
        hilbert_ideal(&veronese()).map_err(|e| e.to_string())?,
    ];
    for i in algebras {
        let a = QuotientAlgebra::new(i).map_err(|e| e.to_string())?;
        check_exp_multiplicative(&a)?;
        check_torus_conjugation(&a, 100, &mut rng)?;
    }
    check_det_index(&mut rng, 500)?;
    Ok(())
}
