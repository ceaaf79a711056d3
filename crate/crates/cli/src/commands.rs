use std::path::Path;
use std::sync::Arc;

use monoalg::derivations::{demazure_roots, lnd_degrees, non_liftable_witness, roots_of_ideal, RootSet, WitnessBranch};
use monoalg::ideal::CofinitenessCertificate;
use monoalg::linalg::Q;
use monoalg::oracle::{all_derivations, compare_batch, compare_with_classification, random_full_cofinite_ideal};
use monoalg::quotient::{aut_generators, build_quotient_limited, default_torus, QuotientAlgebra};
use monoalg::{AffineSemigroup, Error, LatticeVector, MonomialIdeal, RationalDualVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::problem::{self, Problem};
use crate::render::{self, BasisOrder};
use crate::{CliError, Command, Format};

const DEFAULT_BOUND: i64 = 8;
const DEFAULT_MAX_DIM: usize = 512;

struct Output {
    echo: Value,
    hash: Option<String>,
    results: Value,
    warnings: Vec<String>,
    staircase: Option<String>,
    exit: u8,
}

impl Output {
    fn new(echo: Value, hash: Option<String>, results: Value) -> Self {
        Self { echo, hash, results, warnings: Vec::new(), staircase: None, exit: 0 }
    }

    fn render(self, format: Format) -> String {
        let report = json!({
            "command": self.echo,
            "input_sha256": self.hash,
            "results": self.results,
            "warnings": self.warnings,
        });
        match format {
            Format::Json => serde_json::to_string_pretty(&report).expect("values serialize") + "\n",
            Format::Text => {
                let mut out = render::text(&report);
                if let Some(s) = self.staircase {
                    out.push_str("staircase:\n");
                    out.push_str(&s);
                }
                out
            }
        }
    }
}

pub fn run(command: &Command, format: Format) -> Result<(String, u8), CliError> {
    let out = match command {
        Command::Analyze { file } => analyze(file)?,
        Command::Roots { file, bound } => roots(file, *bound)?,
        Command::Lnds { file, bound } => lnds(file, *bound)?,
        Command::Aut { file, torus, param } => aut(file, torus, param.as_deref())?,
        Command::Oracle { file } => oracle(file)?,
        Command::Witness { file } => witness(file)?,
        Command::Exp { file, alpha, p, param } => exp(file, alpha, p, param.as_deref())?,
        Command::Fuzz { seed, count, rank, max_complement } => fuzz(*seed, *count, *rank, *max_complement)?,
    };
    let code = out.exit;
    Ok((out.render(format), code))
}

fn read(path: &Path) -> Result<(String, String), CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let hash = format!("{:x}", Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| CliError::Input("problem file is not UTF-8".into()))?;
    Ok((text, hash))
}

fn load(path: &Path) -> Result<(Problem, String), CliError> {
    let (text, hash) = read(path)?;
    Ok((problem::load(&text)?, hash))
}

fn max_dim() -> Result<usize, CliError> {
    match std::env::var("MONOALG_MAX_DIM") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Input(format!("MONOALG_MAX_DIM must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}

fn parse_rational(s: &str) -> Result<Q, CliError> {
    s.trim().parse::<Q>().map_err(|_| CliError::Input(format!("not a rational number: {s:?}")))
}

fn resolve_bound(flag: Option<i64>, problem: &Problem) -> Result<i64, CliError> {
    let b = flag.or(problem.file.bound).unwrap_or(DEFAULT_BOUND);
    if b < 0 {
        return Err(CliError::Input(format!("bound must be non-negative, got {b}")));
    }
    Ok(b)
}

fn basis_order(q: &QuotientAlgebra, problem: &Problem) -> Result<BasisOrder, CliError> {
    match &problem.file.basis_order_override {
        None => Ok(BasisOrder::natural(q.basis())),
        Some(order) => {
            let order: Vec<LatticeVector> = order.iter().map(|v| LatticeVector::from_i64s(v)).collect();
            BasisOrder::with_override(q.basis(), &order).map_err(CliError::Input)
        }
    }
}

fn quotient(problem: &Problem) -> Result<QuotientAlgebra, CliError> {
    Ok(build_quotient_limited(problem.ideal.clone(), max_dim()?)?)
}

fn semigroup_json(s: &AffineSemigroup) -> Value {
    json!({
        "rank": s.rank(),
        "generators": render::lattices(s.generators()),
        "pointed": true,
        "saturated": true,
        "minimally_embedded": true,
        "simplicial": s.is_simplicial(),
        "first_octant": s.is_first_octant(),
        "dual_rays": render::duals(s.dual_rays()),
        "ray_generators": render::lattices(s.ray_generators()),
        "hilbert_basis": render::lattices(s.hilbert_basis()),
    })
}

fn analyze(file: &Path) -> Result<Output, CliError> {
    let (problem, hash) = load(file)?;
    let ideal = &problem.ideal;
    let mut warnings = Vec::new();
    let certificate = ideal.is_cofinite();
    let (cofinite, certificate_json) = match &certificate {
        CofinitenessCertificate::Cofinite(multiples) => (
            true,
            json!({
                "ray_multiples": multiples
                    .iter()
                    .map(|(ray, k)| json!({"ray": render::lattice(ray), "k": render::int(k)}))
                    .collect::<Vec<_>>()
            }),
        ),
        CofinitenessCertificate::Infinite(ray) => (false, json!({"failing_ray": render::lattice(ray)})),
    };
    let mut staircase = None;
    let complement_size = if cofinite {
        match ideal.complement_limited(max_dim()?) {
            Ok(c) => {
                if problem.semigroup.rank() == 2 {
                    staircase = Some(render::staircase(&c, |m| ideal.in_supp(m)));
                }
                Value::from(c.len())
            }
            Err(Error::ComplementTooLarge { limit }) => {
                warnings.push(format!("complement larger than MONOALG_MAX_DIM={limit}; size not reported"));
                Value::Null
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        Value::Null
    };
    let results = json!({
        "semigroup": semigroup_json(&problem.semigroup),
        "ideal": {
            "generators": render::lattices(ideal.generators()),
            "full": ideal.is_full(),
            "cofinite": cofinite,
            "certificate": certificate_json,
            "complement_size": complement_size,
        },
    });
    let mut out = Output::new(json!({"name": "analyze"}), Some(hash), results);
    out.warnings = warnings;
    out.staircase = staircase;
    Ok(out)
}

fn root_groups(roots: &RootSet) -> Value {
    Value::Array(
        roots
            .groups
            .iter()
            .map(|(rho, alphas)| json!({"dual_ray": render::dual(rho), "roots": render::lattices(alphas)}))
            .collect(),
    )
}

fn roots(file: &Path, bound: Option<i64>) -> Result<Output, CliError> {
    let (problem, hash) = load(file)?;
    let b = resolve_bound(bound, &problem)?;
    let results = json!({
        "bound": b,
        "demazure_roots": root_groups(&demazure_roots(&problem.semigroup, b)),
        "ideal_roots": root_groups(&roots_of_ideal(&problem.ideal, b)),
    });
    let mut out = Output::new(json!({"name": "roots", "bound": b}), Some(hash), results);
    out.warnings.push(format!("bounded search: roots listed with |α_i| <= {b}"));
    Ok(out)
}

fn lnds(file: &Path, bound: Option<i64>) -> Result<Output, CliError> {
    let (problem, hash) = load(file)?;
    let b = resolve_bound(bound, &problem)?;
    let degrees = lnd_degrees(&problem.ideal, Some(b))?;
    let results = json!({
        "bound": if degrees.bounded { Value::from(b) } else { Value::Null },
        "bounded": degrees.bounded,
        "degrees": degrees.degrees.iter().map(render::degree_report).collect::<Vec<_>>(),
    });
    let mut out = Output::new(json!({"name": "lnds", "bound": b}), Some(hash), results);
    if degrees.bounded {
        out.warnings.push(format!("bounded search: support is not cofinite, degrees listed with |α_i| <= {b}"));
    }
    Ok(out)
}

fn aut(file: &Path, torus: &[String], param: Option<&str>) -> Result<Output, CliError> {
    let (problem, hash) = load(file)?;
    let q = quotient(&problem)?;
    let order = basis_order(&q, &problem)?;
    let n = q.ideal().semigroup().rank();
    let t: Vec<Q> = if torus.is_empty() {
        default_torus(n)
    } else {
        torus.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?
    };
    if t.len() != n {
        return Err(CliError::Input(format!("--torus needs {n} components, got {}", t.len())));
    }
    let s = parse_rational(param.unwrap_or("1"))?;
    let gens = aut_generators(&q)?;
    let families: Vec<Value> = gens
        .unipotent_families
        .iter()
        .map(|f| {
            json!({
                "alpha": render::lattice(&f.alpha),
                "case": f.case.tag(),
                "direction": render::rational_dual(&f.direction),
                "coefficients": order.apply_parametric(&f.matrix),
                "specialized": render::matrix(&order.apply(&f.matrix.specialize(&s))),
            })
        })
        .collect();
    let toric: Vec<Value> = gens
        .toric
        .iter()
        .map(|g| {
            json!({
                "lattice_map": render::int_matrix(&g.lattice_map),
                "permutation": order.apply_permutation(&g.permutation),
                "matrix": render::matrix(&order.apply(&g.matrix())),
            })
        })
        .collect();
    let results = json!({
        "basis": order.labels(),
        "dimension": q.dim(),
        "torus": {
            "t": t.iter().map(render::rational).collect::<Vec<_>>(),
            "weights": render::lattices(&gens.torus_weights),
            "matrix": render::matrix(&order.apply(&q.torus_matrix(&t)?)),
        },
        "parameter": render::rational(&s),
        "unipotent_families": families,
        "toric": toric,
        "first_octant_certified": gens.first_octant_certified,
        "opposite_degrees": render::lattices(&gens.opposite_degrees),
    });
    let echo = json!({
        "name": "aut",
        "torus": t.iter().map(render::rational).collect::<Vec<_>>(),
        "param": render::rational(&s),
    });
    let mut out = Output::new(echo, Some(hash), results);
    out.warnings = gens.warnings;
    Ok(out)
}

fn oracle(file: &Path) -> Result<Output, CliError> {
    let (problem, hash) = load(file)?;
    let ideal = &problem.ideal;
    if let CofinitenessCertificate::Infinite(ray) = ideal.is_cofinite() {
        return Err(Error::ComplementInfinite { ray }.into());
    }
    let q = QuotientAlgebra::with_limit(ideal.clone(), max_dim()?)?;
    let report = compare_with_classification(ideal)?;
    let results = json!({
        "dimension": q.dim(),
        "derivation_dim": all_derivations(&q).dim,
        "first_octant": report.first_octant,
        "degrees": report
            .degrees
            .iter()
            .map(|d| json!({
                "alpha": render::lattice(&d.alpha),
                "oracle_dim": d.oracle_dim,
                "classified_dim": d.classified_dim,
                "match": d.matches(),
            }))
            .collect::<Vec<_>>(),
        "mismatches": report.mismatches().iter().map(|d| render::lattice(&d.alpha)).collect::<Vec<_>>(),
        "non_liftable_candidates": render::lattices(&report.extras),
    });
    let mut out = Output::new(json!({"name": "oracle"}), Some(hash), results);
    if report.first_octant && !report.all_match() {
        out.warnings.push("classification disagrees with the oracle on a first octant".into());
        out.exit = 3;
    }
    Ok(out)
}

fn witness(file: &Path) -> Result<Output, CliError> {
    let (problem, hash) = load(file)?;
    let w = non_liftable_witness(&problem.semigroup)?;
    let results = json!({
        "ideal_generators": render::lattices(w.ideal.generators()),
        "source": render::lattice(&w.source),
        "target": render::lattice(&w.target),
        "alpha": render::lattice(&w.alpha),
        "violated_constraints": w
            .violated_constraints
            .iter()
            .map(|(rho, value)| json!({"dual_ray": render::dual(rho), "value": render::int(value)}))
            .collect::<Vec<_>>(),
        "branch": match w.branch {
            WitnessBranch::Simplicial => "simplicial",
            WitnessBranch::NonSimplicial => "non_simplicial",
        },
    });
    Ok(Output::new(json!({"name": "witness"}), Some(hash), results))
}

fn exp(file: &Path, alpha: &[i64], p: &[String], param: Option<&str>) -> Result<Output, CliError> {
    let (problem, hash) = load(file)?;
    let q = quotient(&problem)?;
    let order = basis_order(&q, &problem)?;
    let n = q.ideal().semigroup().rank();
    if alpha.len() != n || p.len() != n {
        return Err(CliError::Input(format!("--alpha and --p need {n} components")));
    }
    let alpha = LatticeVector::from_i64s(alpha);
    let p = RationalDualVector::new(p.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?);
    let d = q.derivation_matrix(&alpha, &p)?;
    let e = q.exp_parametric(&alpha, &p)?;
    let mut results = json!({
        "basis": order.labels(),
        "alpha": render::lattice(&alpha),
        "p": render::rational_dual(&p),
        "derivation": render::matrix(&order.apply(&d)),
        "coefficients": order.apply_parametric(&e),
    });
    let mut echo = json!({"name": "exp", "alpha": render::lattice(&alpha), "p": render::rational_dual(&p)});
    if let Some(s) = param {
        let s = parse_rational(s)?;
        let m = e.specialize(&s);
        results["parameter"] = render::rational(&s);
        results["specialized"] = render::matrix(&order.apply(&m));
        results["is_automorphism"] = Value::from(q.is_algebra_automorphism(&m));
        echo["param"] = render::rational(&s);
    }
    let mut out = Output::new(echo, Some(hash), results);
    out.warnings.extend(q.notice().map(str::to_string));
    Ok(out)
}

fn fuzz(seed: u64, count: usize, rank: usize, max_complement: usize) -> Result<Output, CliError> {
    if !(1..=3).contains(&rank) {
        return Err(CliError::Input(format!("--rank must be 1, 2 or 3, got {rank}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = Arc::new(AffineSemigroup::first_octant(rank));
    let ideals: Vec<MonomialIdeal> = (0..count).map(|_| random_full_cofinite_ideal(&mut rng, &s, max_complement)).collect();
    let reports = compare_batch(&ideals)?;
    let failures: Vec<Value> = ideals
        .iter()
        .zip(&reports)
        .filter(|(_, r)| !r.all_match() || !r.extras.is_empty())
        .map(|(i, r)| {
            json!({
                "generators": render::lattices(i.generators()),
                "mismatches": r.mismatches().iter().map(|d| render::lattice(&d.alpha)).collect::<Vec<_>>(),
                "extras": render::lattices(&r.extras),
            })
        })
        .collect();
    let results = json!({
        "compared": count,
        "all_match": failures.is_empty(),
        "failures": failures,
    });
    let echo = json!({"name": "fuzz", "seed": seed, "count": count, "rank": rank, "max_complement": max_complement});
    let mut out = Output::new(echo, None, results);
    if !out.results["all_match"].as_bool().unwrap_or(false) {
        out.exit = 3;
    }
    Ok(out)
}
