//! Hilbert functions of plane point sets, their first differences, and the
//! arithmetic classifier relating point count and minimal degree.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::geometry::{PointConfiguration, ProjPoint};
use crate::linalg::{rank, ExactMatrix};

/// C(i+2, 2): the number of monomials of degree i in three variables.
pub fn forms_dimension(i: usize) -> usize {
    (i + 1) * (i + 2) / 2
}

/// Exponents (a, b, c) with a+b+c = degree in graded lex order, x > y > z.
pub fn monomials(degree: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(forms_dimension(degree));
    for a in (0..=degree).rev() {
        for b in (0..=degree - a).rev() {
            out.push([a, b, degree - a - b]);
        }
    }
    out
}

/// Position of a monomial in [`monomials`] of its degree.
pub fn monomial_index(e: [usize; 3]) -> usize {
    let d = e[0] + e[1] + e[2];
    let k = d - e[0];
    // exponents with first entry > a come first: 1 + 2 + ... + k
    k * (k + 1) / 2 + (k - e[1])
}

fn powers(x: &FieldElement, d: usize) -> Vec<FieldElement> {
    let mut out = Vec::with_capacity(d + 1);
    out.push(x.field().one());
    for i in 0..d {
        out.push(&out[i] * x);
    }
    out
}

/// Monomial values at each point: one row per point, columns in graded lex order.
pub fn evaluation_matrix(points: &[ProjPoint], degree: usize) -> ExactMatrix {
    let mons = monomials(degree);
    let field = match points.first() {
        Some(p) => p.field().clone(),
        None => return ExactMatrix::zeros(&crate::field::Field::rational(), 0, mons.len()),
    };
    let rows = points
        .iter()
        .map(|p| {
            let pw: Vec<Vec<FieldElement>> = p.coords().iter().map(|c| powers(c, degree)).collect();
            mons.iter()
                .map(|&[a, b, c]| &(&pw[0][a] * &pw[1][b]) * &pw[2][c])
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(&field, rows)
}

/// H(X, i): the rank of the degree-i evaluation matrix.
pub fn hilbert_value(x: &PointConfiguration, i: usize) -> usize {
    if x.is_empty() {
        return 0;
    }
    rank(&evaluation_matrix(x.points(), i))
}

/// Dimension of the space of degree-i forms vanishing on X.
pub fn h0_ideal(x: &PointConfiguration, i: usize) -> usize {
    forms_dimension(i) - hilbert_value(x, i)
}

/// Failure of X to impose independent conditions in degree i.
pub fn h1_ideal(x: &PointConfiguration, i: usize) -> usize {
    x.len() - hilbert_value(x, i)
}

/// Hilbert function up to stabilization, with first differences and landmarks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertProfile {
    /// H(X, 0..=t)
    pub values: Vec<usize>,
    pub deltas: Vec<usize>,
    /// First i with Δ(i) < i + 1.
    pub a1: usize,
    /// First i ≥ a1 with Δ(i) < a1, or t + 1 when Δ never drops below a1.
    pub a2: usize,
    /// Last i with Δ(i) > 0.
    pub t: usize,
    pub shape_warnings: Vec<String>,
}

impl HilbertProfile {
    /// Builds a profile from Hilbert values that stabilize at their last entry.
    pub fn from_values(values: Vec<usize>) -> Result<Self> {
        if values.is_empty() || values[0] == 0 {
            return Err(Error::EmptyConfiguration);
        }
        let deltas: Vec<usize> = values
            .iter()
            .enumerate()
            .map(|(i, &v)| if i == 0 { v } else { v - values[i - 1] })
            .collect();
        let t = deltas.iter().rposition(|&d| d > 0).unwrap();
        let delta = |i: usize| deltas.get(i).copied().unwrap_or(0);
        let a1 = (0..=t + 1).find(|&i| delta(i) < i + 1).unwrap_or(t + 1);
        let a2 = (a1..=t).find(|&i| delta(i) < a1).unwrap_or(t + 1);

        let mut shape_warnings = Vec::new();
        for i in a1..a2.min(t + 1) {
            if delta(i) != a1 {
                shape_warnings.push(format!("delta({i}) = {} differs from a1 = {a1} before a2", delta(i)));
            }
        }
        for i in a2..t {
            if delta(i + 1) > delta(i) {
                shape_warnings.push(format!(
                    "delta increases from {} to {} at {}",
                    delta(i),
                    delta(i + 1),
                    i + 1
                ));
            }
        }
        Ok(HilbertProfile {
            values,
            deltas,
            a1,
            a2,
            t,
            shape_warnings,
        })
    }

    /// H(X, i) for any i, using stabilization past the stored range.
    pub fn value(&self, i: usize) -> usize {
        self.values.get(i).copied().unwrap_or(*self.values.last().unwrap())
    }

    pub fn delta(&self, i: usize) -> usize {
        self.deltas.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        *self.values.last().unwrap()
    }

    /// Least i with a nonzero form of degree i through X.
    pub fn minimal_degree(&self) -> usize {
        (0..).find(|&i| self.value(i) < forms_dimension(i)).unwrap()
    }
}

/// Hilbert values until they reach deg X.
pub fn profile(x: &PointConfiguration) -> Result<HilbertProfile> {
    if x.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    let n = x.len();
    let mut values = Vec::new();
    for i in 0..n {
        let h = hilbert_value(x, i);
        values.push(h);
        if h == n {
            break;
        }
    }
    HilbertProfile::from_values(values)
}

/// The value min{H(X, i), n} every n-subset shares when X has uniform position.
pub fn truncation_predict(profile: &HilbertProfile, n: usize, i: usize) -> usize {
    profile.value(i).min(n)
}

/// Δ strictly decreasing on [a2, t]; vacuous when that range has fewer
/// than two indices.
pub fn is_decreasing_type(profile: &HilbertProfile) -> bool {
    (profile.a2..profile.t).all(|i| profile.delta(i) > profile.delta(i + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Prop2Case {
    /// Every curve of minimal degree through X is irreducible.
    AllIrreducible,
    /// The generic curve of minimal degree through X is irreducible.
    GenericIrreducible,
    NotApplicable,
}

/// Conclusion for n points in uniform position whose minimal degree is g,
/// with n = C(d+2, 2) + h.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop2Verdict {
    pub n: usize,
    pub d: usize,
    pub h: usize,
    pub g: usize,
    pub case: Prop2Case,
    /// The conclusion assumes uniform position; it says nothing otherwise.
    pub requires_upp: bool,
}

/// (d, h) with n = C(d+2, 2) + h and 0 ≤ h ≤ d + 1.
pub fn split_point_count(n: usize) -> (usize, usize) {
    let mut d = 0;
    while forms_dimension(d + 1) <= n {
        d += 1;
    }
    (d, n - forms_dimension(d))
}

/// d² + 3d + 2h > g² + g: a reducible member of degree g through X
/// would force the reverse inequality.
pub fn reducible_member_impossible(d: usize, h: usize, g: usize) -> bool {
    d * d + 3 * d + 2 * h > g * g + g
}

pub fn classify_prop2(n: usize, g: usize) -> Result<Prop2Verdict> {
    if n == 0 || g == 0 {
        return Err(Error::InvalidInput("n and g must be positive".into()));
    }
    let (d, h) = split_point_count(n);
    if g > d + 1 {
        return Err(Error::InconsistentInput { n, g, d });
    }
    let case = if g <= d || h >= 2 {
        Prop2Case::AllIrreducible
    } else {
        Prop2Case::GenericIrreducible
    };
    Ok(Prop2Verdict {
        n,
        d,
        h,
        g,
        case,
        requires_upp: true,
    })
}
