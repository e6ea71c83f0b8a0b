use std::time::Instant;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::operator::{Monomial, SchrodingerOperator as Op};
use super::SchrodingerError;
use crate::report::{CheckEntry, VerificationReport};
use crate::scalar::{frac, int, rational_string, Rational};

pub const GENERATORS: [&str; 6] = ["H", "P", "M", "K", "D", "C"];

/// Parameters of one realization: deformation `z`, mass `m`, representation
/// label `a`. In classical mode `z` is carried along but never used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationParams {
    #[serde(with = "rational_string")]
    pub z: Rational,
    #[serde(with = "rational_string")]
    pub m: Rational,
    #[serde(with = "rational_string")]
    pub a: Rational,
    pub classical: bool,
}

impl RealizationParams {
    pub fn deformed(z: Rational, m: Rational, a: Rational) -> Self {
        RealizationParams { z, m, a, classical: false }
    }

    pub fn classical(m: Rational, a: Rational) -> Self {
        RealizationParams { z: int(0), m, a, classical: true }
    }

    /// `b = m/2 − 2`
    pub fn b(&self) -> Rational {
        &self.m / int(2) - int(2)
    }

    pub fn mode(&self) -> &'static str {
        if self.classical {
            "classical"
        } else {
            "deformed"
        }
    }

    pub(crate) fn tag(&self, entry: CheckEntry) -> CheckEntry {
        let entry = entry.param("mode", self.mode()).param("m", &self.m).param("a", &self.a);
        if self.classical {
            entry
        } else {
            entry.param("z", &self.z)
        }
    }

    fn check(&self) -> Result<(), SchrodingerError> {
        if !self.classical && !self.z.is_positive() {
            return Err(SchrodingerError::NonPositiveZ(self.z.clone()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Forward `(T − 1)/(4z)` or backward `(1 − T⁻¹)/(4z)` difference quotient.
pub fn discrete_derivative(z: &Rational, direction: Direction) -> Result<Op, SchrodingerError> {
    if !z.is_positive() {
        return Err(SchrodingerError::NonPositiveZ(z.clone()));
    }
    let h = (int(4) * z).recip();
    let out = match direction {
        Direction::Forward => &Op::shift(z, 1) - &Op::one(z),
        Direction::Backward => &Op::one(z) - &Op::shift(z, -1),
    };
    Ok(out.scale(&h))
}

fn c(z: &Rational, q: Rational) -> Op {
    Op::scalar(z, q)
}

/// The differential-difference realization of a generator; classical mode
/// gives the vector-field realization.
pub fn realize(generator: &str, p: &RealizationParams) -> Result<Op, SchrodingerError> {
    p.check()?;
    let z = &p.z;
    let (x, t, dx, dt) = (Op::x(z), Op::t(z), Op::dx(z), Op::dt(z));
    let xdx = &x * &dx;
    let a = c(z, p.a.clone());
    let m = c(z, p.m.clone());
    let half_mx2 = (&x * &x).scale(&(&p.m / int(2)));
    if p.classical {
        return Ok(match generator {
            "H" => dt,
            "P" => dx,
            "M" => m,
            "K" => &(-&(&t * &dx)) - &(&m * &x),
            "D" => &(&(&t * &dt).scale(&int(2)) + &xdx) - &a,
            "C" => &(&(&(&(&t * &t) * &dt) + &(&t * &xdx)) - &(&a * &t)) + &half_mx2,
            _ => return Err(SchrodingerError::UnknownGenerator(generator.to_string())),
        });
    }
    let four_z = int(4) * z;
    let shift = Op::shift(z, 1);
    let fwd = discrete_derivative(z, Direction::Forward)?;
    let t4 = &t + &c(z, four_z.clone());
    let b = p.b();
    Ok(match generator {
        "H" => dt,
        "P" => dx,
        "M" => m,
        "K" => &(-&(&(&t4 * &shift) * &dx)) - &(&m * &x),
        "D" => &(&(&t4 * &fwd).scale(&int(2)) + &xdx) - &a,
        "C" => {
            let quad = &(&t * &t) - &t.scale(&(&four_z * &b));
            let bma = &b - &p.a;
            let mut out = &quad * &fwd;
            out = &out + &(&t * &xdx);
            out = &out - &(&a * &t);
            out = &out + &half_mx2;
            out = &out - &shift.scale(&(&four_z * (&b + int(1))));
            out = &out - &(&(&x * &x) * &(&dx * &dx)).scale(z);
            out = &out - &xdx.scale(&(int(2) * z * (&bma + frac(1, 2))));
            &out - &c(z, z * &bma * &bma)
        }
        _ => return Err(SchrodingerError::UnknownGenerator(generator.to_string())),
    })
}

/// `∂x² − 2m(1 − T⁻¹)/(4z)`, or `∂x² − 2m∂t` in classical mode.
pub fn casimir(p: &RealizationParams) -> Result<Op, SchrodingerError> {
    p.check()?;
    let z = &p.z;
    let dx = Op::dx(z);
    let time = if p.classical { Op::dt(z) } else { discrete_derivative(z, Direction::Backward)? };
    Ok(&(&dx * &dx) - &time.scale(&(int(2) * &p.m)))
}

/// The 15 brackets as `(X, Y, [X,Y])` with the right-hand sides evaluated on
/// the realized generators; `e^{4zH}` becomes `T`.
pub fn bracket_table(p: &RealizationParams) -> Result<Vec<(&'static str, &'static str, Op)>, SchrodingerError> {
    let g = |n: &str| realize(n, p);
    let (h, pp, m, k, d, cc) = (g("H")?, g("P")?, g("M")?, g("K")?, g("D")?, g("C")?);
    let z = &p.z;
    let zero = Op::zero(z);
    let mut table = vec![
        ("D", "P", -&pp),
        ("D", "K", k.clone()),
        ("K", "P", m.clone()),
        ("P", "H", zero.clone()),
    ];
    for y in ["H", "P", "K", "D", "C"] {
        table.push(("M", y, zero.clone()));
    }
    if p.classical {
        table.extend([
            ("D", "H", h.scale(&int(-2))),
            ("D", "C", cc.scale(&int(2))),
            ("H", "C", d.clone()),
            ("K", "H", pp.clone()),
            ("K", "C", zero.clone()),
            ("P", "C", -&k),
        ]);
        return Ok(table);
    }
    let shift = Op::shift(z, 1);
    let one_minus_t = &Op::one(z) - &shift;
    let dm = &d + &m.scale(&frac(1, 2));
    table.extend([
        ("D", "H", one_minus_t.scale(&(int(2) * z).recip())),
        ("D", "C", &cc.scale(&int(2)) + &dm.square().scale(&(int(2) * z))),
        ("H", "C", &d + &(&m * &one_minus_t).scale(&frac(1, 2))),
        ("K", "H", &shift * &pp),
        ("K", "C", (&(&(&d * &k) + &(&k * &d)) + &(&k * &m)).scale(z)),
        ("P", "C", &(-&k) - &(&(&(&d * &pp) + &(&pp * &d)) + &(&pp * &m)).scale(z)),
    ]);
    Ok(table)
}

/// Checks every bracket of the realized generators against the table.
pub fn verify_realization(p: &RealizationParams) -> Result<VerificationReport, SchrodingerError> {
    let mut report = VerificationReport::new();
    for (x, y, rhs) in bracket_table(p)? {
        let start = Instant::now();
        let res = &realize(x, p)?.commutator(&realize(y, p)?) - &rhs;
        let entry = CheckEntry::new("discrete-se", format!("realization/[{x},{y}]"));
        report.push(p.tag(entry).residual(res.is_zero(), || res.render()).since(start));
    }
    Ok(report)
}

/// `Λ = λ₀ + λ₁ t + λ₂ x∂x`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lambda(pub [Rational; 3]);

impl Lambda {
    pub fn zero() -> Self {
        Lambda([int(0), int(0), int(0)])
    }

    pub fn basis(z: &Rational) -> [Op; 3] {
        [Op::one(z), Op::t(z), &Op::x(z) * &Op::dx(z)]
    }

    pub fn operator(&self, z: &Rational) -> Op {
        let mut out = Op::zero(z);
        for (c, b) in self.0.iter().zip(Self::basis(z)) {
            out = &out + &b.scale(c);
        }
        out
    }
}

/// The multiplier announced for each generator: `0` for `K, H, P, M`, `2` for
/// `D`, and `2{t + z(1 − m − 2x∂x)}` for `C` (which reduces to `2t`
/// classically). `None` for an unknown name.
pub fn expected_lambda(generator: &str, p: &RealizationParams) -> Option<Lambda> {
    match generator {
        "H" | "P" | "M" | "K" => Some(Lambda::zero()),
        "D" => Some(Lambda([int(2), int(0), int(0)])),
        "C" if p.classical => Some(Lambda([int(0), int(2), int(0)])),
        "C" => Some(Lambda([int(2) * &p.z * (int(1) - &p.m), int(2), int(-4) * &p.z])),
        _ => None,
    }
}

/// Divides `[E, S]` on the left by `E` within the span of `{1, t, x∂x}`.
///
/// Every basis product `b·E` has a leading term `b ∂x²` that no other product
/// contains, so the `λᵢ` are read off those coefficients and the remainder is
/// whatever is left.
pub fn divide_by_casimir(commutator: &Op, e: &Op) -> (Lambda, Op) {
    let z = e.z();
    let lead = e.coefficient(&Monomial::new(0, 0, 0, 2, 0));
    debug_assert!(lead.is_one());
    let pivots = [Monomial::new(0, 0, 0, 2, 0), Monomial::new(0, 1, 0, 2, 0), Monomial::new(1, 0, 0, 3, 0)];
    let lambda = Lambda(pivots.map(|m| commutator.coefficient(&m)));
    let remainder = commutator - &(&lambda.operator(z) * e);
    (lambda, remainder)
}

#[derive(Clone, Debug)]
pub struct SymmetryOutcome {
    pub commutator: Op,
    pub lambda: Lambda,
    pub remainder: Op,
}

pub fn symmetry_outcome(generator: &str, p: &RealizationParams) -> Result<SymmetryOutcome, SchrodingerError> {
    let e = casimir(p)?;
    let commutator = e.commutator(&realize(generator, p)?);
    let (lambda, remainder) = divide_by_casimir(&commutator, &e);
    Ok(SymmetryOutcome { commutator, lambda, remainder })
}

/// One entry per generator: passes iff `[E, S] = Λ·E` exactly with the
/// announced `Λ`. A nonzero remainder is reported verbatim.
pub fn symmetry_check(generator: &str, p: &RealizationParams) -> Result<CheckEntry, SchrodingerError> {
    let start = Instant::now();
    let expected = expected_lambda(generator, p).ok_or_else(|| SchrodingerError::UnknownGenerator(generator.into()))?;
    let out = symmetry_outcome(generator, p)?;
    let entry = p.tag(CheckEntry::new("discrete-se", format!("symmetry/{generator}")));
    let entry = if !out.remainder.is_zero() {
        entry.outcome(false, format!("remainder {}", out.remainder.render()))
    } else if out.lambda != expected {
        let z = &p.z;
        entry.outcome(false, format!("Λ = {}, expected {}", out.lambda.operator(z), expected.operator(z)))
    } else {
        entry.outcome(true, "0")
    };
    Ok(entry.since(start))
}

pub fn verify_symmetries(p: &RealizationParams) -> Result<VerificationReport, SchrodingerError> {
    GENERATORS.iter().map(|g| symmetry_check(g, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: Rational) -> RealizationParams {
        RealizationParams::deformed(frac(1, 10), int(1), a)
    }

    #[test]
    fn printed_generators() {
        let p = params(frac(-1, 2));
        assert_eq!(realize("H", &p).unwrap().render(), "∂t");
        assert_eq!(realize("M", &p).unwrap().render(), "1");
        assert_eq!(realize("K", &p).unwrap().render(), "-2/5*T ∂x - t T ∂x - x");
        assert_eq!(realize("D", &p).unwrap().render(), "-3/2 + 2*T - 5*t + 5*t T + x ∂x");
        assert!(matches!(realize("Q", &p), Err(SchrodingerError::UnknownGenerator(_))));
    }

    #[test]
    fn forward_and_backward_differences() {
        let z = frac(1, 10);
        let f = discrete_derivative(&z, Direction::Forward).unwrap();
        let b = discrete_derivative(&z, Direction::Backward).unwrap();
        assert_eq!(f.render(), "-5/2 + 5/2*T");
        assert_eq!(b.render(), "-5/2*T^-1 + 5/2");
        assert!(discrete_derivative(&int(0), Direction::Forward).is_err());
    }

    #[test]
    fn dilation_and_boost_brackets() {
        let p = params(int(0));
        let d = realize("D", &p).unwrap();
        let h = realize("H", &p).unwrap();
        assert_eq!(d.commutator(&h).render(), "5 - 5*T");
        let k = realize("K", &p).unwrap();
        assert_eq!(k.commutator(&h).render(), "T ∂x");
        assert_eq!(k.commutator(&realize("P", &p).unwrap()).render(), "1");
    }

    #[test]
    fn conformal_symmetry_needs_a_minus_half() {
        let ok = symmetry_outcome("C", &params(frac(-1, 2))).unwrap();
        assert!(ok.remainder.is_zero());
        assert_eq!(ok.lambda, expected_lambda("C", &params(frac(-1, 2))).unwrap());
        let bad = symmetry_outcome("C", &params(int(0))).unwrap();
        assert!(!bad.remainder.is_zero());
    }
}
