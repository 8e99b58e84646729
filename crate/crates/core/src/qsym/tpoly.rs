//! Polynomials in `t` with quasisymmetric coefficients.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Basis, Composition, QSymExpr};

/// `sum_j t^j * c_j` with each `c_j` a nonzero [`QSymExpr`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TQSymPoly {
    basis: Basis,
    coeffs: BTreeMap<u32, QSymExpr>,
}

impl TQSymPoly {
    pub fn zero(basis: Basis) -> Self {
        TQSymPoly {
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Add `c * t^exp * basis_alpha`.
    pub fn add_term(&mut self, exp: u32, comp: Composition, c: BigInt) {
        let basis = self.basis;
        let slot = self.coeffs.entry(exp).or_insert_with(|| QSymExpr::zero(basis));
        slot.add_term(comp, c);
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    /// Add `t^exp * expr`, converting `expr` to this polynomial's basis.
    pub fn add_coeff(&mut self, exp: u32, expr: &QSymExpr) {
        for (c, k) in expr.to_basis(self.basis).terms() {
            self.add_term(exp, c.clone(), k.clone());
        }
    }

    pub fn coeff(&self, exp: u32) -> QSymExpr {
        self.coeffs
            .get(&exp)
            .cloned()
            .unwrap_or_else(|| QSymExpr::zero(self.basis))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &QSymExpr)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest power of `t`; `None` for the zero polynomial.
    pub fn t_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Coefficient of the highest power of `t`.
    pub fn top_coefficient(&self) -> Option<(u32, &QSymExpr)> {
        self.coeffs.iter().next_back().map(|(&e, c)| (e, c))
    }

    /// Value at `t = 1`.
    pub fn eval_t1(&self) -> QSymExpr {
        let mut out = QSymExpr::zero(self.basis);
        for c in self.coeffs.values() {
            out = out.try_add(c).expect("coefficients share a basis");
        }
        out
    }

    /// Regroup as `composition -> polynomial in t`.
    pub fn by_composition(&self) -> BTreeMap<Composition, BTreeMap<u32, BigInt>> {
        let mut out: BTreeMap<Composition, BTreeMap<u32, BigInt>> = BTreeMap::new();
        for (&e, expr) in &self.coeffs {
            for (c, k) in expr.terms() {
                out.entry(c.clone()).or_default().insert(e, k.clone());
            }
        }
        out
    }

    /// Product in `QSym[t]`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.basis);
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &other.coeffs {
                out.add_coeff(a + b, &ca.mul(cb));
            }
        }
        out
    }

    pub fn canonical_bytes(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("polynomial serializes")
    }
}

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().bytes().map(|b| DIGITS[(b - b'0') as usize]).collect()
}

fn t_power(e: u32) -> String {
    match e {
        0 => String::new(),
        1 => "t".into(),
        _ => format!("t{}", superscript(e)),
    }
}

/// Renders one coefficient polynomial, e.g. `2+2t+2t²`.
fn render_tpoly(p: &BTreeMap<u32, BigInt>) -> String {
    let mut s = String::new();
    for (i, (&e, c)) in p.iter().enumerate() {
        let mag = c.abs();
        if c.is_negative() {
            s.push('-');
        } else if i > 0 {
            s.push('+');
        }
        if !(mag.is_one() && e > 0) {
            s.push_str(&mag.to_string());
        }
        s.push_str(&t_power(e));
    }
    s
}

/// Terms are grouped by composition and listed by decreasing `t`-degree of
/// their coefficient, ties broken lexicographically:
/// `(2+2t+2t²)·M[1,1,1] + t²·M[2,1] + M[1,2]`.
impl fmt::Display for TQSymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let grouped = self.by_composition();
        let mut order: Vec<_> = grouped.iter().collect();
        order.sort_by_key(|(c, p)| (Reverse(*p.keys().next_back().unwrap()), (*c).clone()));
        let letter = self.basis.letter();
        for (i, (comp, poly)) in order.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let body = if comp.is_empty() {
                None
            } else {
                Some(format!("{letter}{comp}"))
            };
            let single = poly.len() == 1;
            let (&e, c) = poly.iter().next().unwrap();
            match body {
                None if single => write!(f, "{}", render_tpoly(poly))?,
                None => write!(f, "({})", render_tpoly(poly))?,
                Some(b) if single && c.is_one() && e == 0 => write!(f, "{b}")?,
                Some(b) if single && !c.is_negative() => write!(f, "{}·{b}", render_tpoly(poly))?,
                Some(b) => write!(f, "({})·{b}", render_tpoly(poly))?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    t: u32,
    coeff: QSymExpr,
}

#[derive(Serialize, Deserialize)]
struct RawPoly {
    basis: Basis,
    terms: Vec<RawTerm>,
}

impl Serialize for TQSymPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawPoly {
            basis: self.basis,
            terms: self
                .coeffs
                .iter()
                .map(|(&t, c)| RawTerm { t, coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TQSymPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawPoly::deserialize(d)?;
        let mut p = TQSymPoly::zero(raw.basis);
        for term in raw.terms {
            if term.coeff.basis() != raw.basis {
                return Err(serde::de::Error::custom(
                    "coefficient basis differs from polynomial basis",
                ));
            }
            p.add_coeff(term.t, &term.coeff);
        }
        Ok(p)
    }
}

impl Zero for TQSymPoly {
    fn zero() -> Self {
        TQSymPoly::zero(Basis::M)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl std::ops::Add for TQSymPoly {
    type Output = TQSymPoly;
    fn add(mut self, rhs: TQSymPoly) -> TQSymPoly {
        for (e, c) in rhs.coeffs {
            self.add_coeff(e, &c);
        }
        self
    }
}
