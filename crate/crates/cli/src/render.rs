use monoalg::derivations::LndDegreeReport;
use monoalg::linalg::Q;
use monoalg::quotient::ParametricMatrix;
use monoalg::{ComplementBasis, DualVector, IntMatrix, LatticeVector, RationalDualVector, RationalMatrix};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

/// Always `"num/den"` with a positive denominator.
pub fn rational(x: &Q) -> Value {
    Value::from(format!("{}/{}", x.numer(), x.denom()))
}

pub fn lattice(v: &LatticeVector) -> Value {
    Value::Array(v.coords().iter().map(int).collect())
}

pub fn dual(v: &DualVector) -> Value {
    Value::Array(v.coords().iter().map(int).collect())
}

pub fn rational_dual(v: &RationalDualVector) -> Value {
    Value::Array(v.coords().iter().map(rational).collect())
}

pub fn lattices(vs: &[LatticeVector]) -> Value {
    Value::Array(vs.iter().map(lattice).collect())
}

pub fn duals(vs: &[DualVector]) -> Value {
    Value::Array(vs.iter().map(dual).collect())
}

pub fn int_matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.nrows()).map(|i| Value::Array(m.row(i).iter().map(int).collect())).collect())
}

pub fn matrix(m: &RationalMatrix) -> Value {
    Value::Array((0..m.nrows()).map(|i| Value::Array(m.row(i).iter().map(rational).collect())).collect())
}

/// Row and column order used for printed matrices.
pub struct BasisOrder {
    labels: Vec<LatticeVector>,
    positions: Vec<usize>,
}

impl BasisOrder {
    pub fn natural(basis: &ComplementBasis) -> Self {
        Self { labels: basis.elements().to_vec(), positions: (0..basis.len()).collect() }
    }

    pub fn with_override(basis: &ComplementBasis, order: &[LatticeVector]) -> Result<Self, String> {
        let mut positions = Vec::with_capacity(order.len());
        for m in order {
            match basis.index_of(m) {
                Some(i) if !positions.contains(&i) => positions.push(i),
                _ => return Err(format!("basis_order_override: {m} is not a basis element")),
            }
        }
        if positions.len() != basis.len() {
            return Err(format!("basis_order_override lists {} of {} basis elements", positions.len(), basis.len()));
        }
        Ok(Self { labels: order.to_vec(), positions })
    }

    pub fn labels(&self) -> Value {
        lattices(&self.labels)
    }

    pub fn apply(&self, m: &RationalMatrix) -> RationalMatrix {
        let d = self.positions.len();
        let mut out = RationalMatrix::zeros(d, d);
        for (i, &pi) in self.positions.iter().enumerate() {
            for (j, &pj) in self.positions.iter().enumerate() {
                out[(i, j)] = m[(pi, pj)].clone();
            }
        }
        out
    }

    pub fn apply_parametric(&self, m: &ParametricMatrix) -> Value {
        Value::Array(
            self.positions
                .iter()
                .map(|&pi| {
                    Value::Array(
                        self.positions.iter().map(|&pj| Value::Array(m.entry(pi, pj).iter().map(rational).collect())).collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn apply_permutation(&self, perm: &[usize]) -> Value {
        let inverse: Vec<usize> = {
            let mut inv = vec![0; self.positions.len()];
            for (new, &old) in self.positions.iter().enumerate() {
                inv[old] = new;
            }
            inv
        };
        Value::Array(self.positions.iter().map(|&old| Value::from(inverse[perm[old]])).collect())
    }
}

pub fn degree_report(r: &LndDegreeReport) -> Value {
    json!({
        "alpha": lattice(&r.alpha),
        "case": r.case.tag(),
        "g_basis": r.g_basis.iter().map(rational_dual).collect::<Vec<_>>(),
        "k_basis": r.k_basis.iter().map(rational_dual).collect::<Vec<_>>(),
        "representatives": r.representatives.iter().map(rational_dual).collect::<Vec<_>>(),
        "effective_dim": r.effective_dim,
    })
}

/// Deterministic indented rendering of a JSON value; leaf arrays stay on one line.
pub fn text(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, 0, &mut out);
    out
}

fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_object() && (!x.is_array() || is_flat(x))),
        Value::Object(_) => false,
        _ => true,
    }
}

fn is_flat(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => write_object(map, indent, out),
        Value::Array(items) => {
            for item in items {
                if is_leaf(item) {
                    out.push_str(&format!("{pad}- {}\n", inline(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    write_value(item, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

fn write_object(map: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    for (k, val) in map {
        if is_leaf(val) {
            out.push_str(&format!("{pad}{k}: {}\n", inline(val)));
        } else if val.as_array().is_some_and(|a| a.is_empty()) || val.as_object().is_some_and(|o| o.is_empty()) {
            out.push_str(&format!("{pad}{k}: []\n"));
        } else {
            out.push_str(&format!("{pad}{k}:\n"));
            write_value(val, indent + 1, out);
        }
    }
}

/// Rank-2 complement as a grid, `y` decreasing downward; `o` marks complement
/// elements, `#` points of `supp(I)` in the window.
pub fn staircase(basis: &ComplementBasis, in_supp: impl Fn(&LatticeVector) -> bool) -> String {
    let coords: Vec<(i64, i64)> = basis
        .iter()
        .filter_map(|m| {
            let v = m.to_i64s()?;
            Some((v[0], v[1]))
        })
        .collect();
    let (x_lo, x_hi) = bounds(coords.iter().map(|c| c.0));
    let (y_lo, y_hi) = bounds(coords.iter().map(|c| c.1));
    let mut out = String::new();
    for y in (y_lo..=y_hi + 1).rev() {
        out.push_str(&format!("{y:>4} "));
        for x in x_lo..=x_hi + 1 {
            let m = LatticeVector::from_i64s(&[x, y]);
            let c = if basis.contains(&m) {
                'o'
            } else if in_supp(&m) {
                '#'
            } else {
                ' '
            };
            out.push(c);
        }
        out.push('\n');
    }
    out
}

fn bounds(it: impl Iterator<Item = i64>) -> (i64, i64) {
    let v: Vec<i64> = it.collect();
    let lo = v.iter().copied().min().unwrap_or(0).min(0);
    let hi = v.iter().copied().max().unwrap_or(0).max(0);
    (lo, hi)
}
