use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::operator::SchrodingerOperator as Op;
use super::realization::{casimir, realize, RealizationParams, GENERATORS};
use super::SchrodingerError;
use crate::report::{CheckEntry, VerificationReport};
use crate::scalar::{int, rational_to_f64, Rational};

/// `x^x t^t e^{κx} g(t)` where `g(t + 4z) = ρ g(t)` and `g' = ω g`. The two
/// temporal attributes are independent formal data.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FnTerm {
    pub kappa: Rational,
    pub rho: Rational,
    pub omega: Rational,
    pub x: u32,
    pub t: u32,
}

impl FnTerm {
    pub fn polynomial(x: u32, t: u32) -> Self {
        FnTerm { kappa: int(0), rho: int(1), omega: int(0), x, t }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpPolyFunction {
    z: Rational,
    terms: BTreeMap<FnTerm, Rational>,
}

fn pow(q: &Rational, n: i64) -> Rational {
    let p = (0..n.unsigned_abs()).fold(Rational::one(), |acc, _| acc * q);
    if n < 0 {
        p.recip()
    } else {
        p
    }
}

impl ExpPolyFunction {
    pub fn zero(z: &Rational) -> Self {
        ExpPolyFunction { z: z.clone(), terms: BTreeMap::new() }
    }

    pub fn from_terms(
        z: &Rational,
        terms: impl IntoIterator<Item = (FnTerm, Rational)>,
    ) -> Result<Self, SchrodingerError> {
        let mut f = Self::zero(z);
        for (k, c) in terms {
            if k.rho.is_zero() {
                return Err(SchrodingerError::ZeroStepFactor);
            }
            f.add_term(k, c);
        }
        Ok(f)
    }

    pub fn z(&self) -> &Rational {
        &self.z
    }

    pub fn terms(&self) -> &BTreeMap<FnTerm, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: FnTerm, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    fn map_terms(&self, f: impl Fn(&FnTerm, &Rational, &mut Self)) -> Self {
        let mut out = Self::zero(&self.z);
        for (k, c) in &self.terms {
            f(k, c, &mut out);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_terms(|k, d, out| out.add_term(k.clone(), d * c))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }

    pub fn mul_x(&self) -> Self {
        self.map_terms(|k, c, out| out.add_term(FnTerm { x: k.x + 1, ..k.clone() }, c.clone()))
    }

    pub fn mul_t(&self) -> Self {
        self.map_terms(|k, c, out| out.add_term(FnTerm { t: k.t + 1, ..k.clone() }, c.clone()))
    }

    pub fn dx(&self) -> Self {
        self.map_terms(|k, c, out| {
            if k.x > 0 {
                out.add_term(FnTerm { x: k.x - 1, ..k.clone() }, c * int(k.x as i64));
            }
            out.add_term(k.clone(), c * &k.kappa);
        })
    }

    pub fn dt(&self) -> Self {
        self.map_terms(|k, c, out| {
            if k.t > 0 {
                out.add_term(FnTerm { t: k.t - 1, ..k.clone() }, c * int(k.t as i64));
            }
            out.add_term(k.clone(), c * &k.omega);
        })
    }

    /// `T^n`: `t → t + 4zn`, temporal factor times `ρⁿ`.
    pub fn shift(&self, n: i32) -> Self {
        let step = &self.z * int(4 * n as i64);
        self.map_terms(|k, c, out| {
            let c = c * pow(&k.rho, n as i64);
            for l in 0..=k.t {
                let spread = int(binomial(k.t as u64, l as u64) as i64) * pow(&step, (k.t - l) as i64);
                out.add_term(FnTerm { t: l, ..k.clone() }, &c * spread);
            }
        })
    }

    /// The action of a canonical operator, rightmost letters first.
    pub fn apply(&self, op: &Op) -> Result<Self, SchrodingerError> {
        if op.z() != &self.z {
            return Err(SchrodingerError::ZMismatch(op.z().to_string(), self.z.to_string()));
        }
        let mut out = Self::zero(&self.z);
        for (m, c) in op.terms() {
            let mut f = self.clone();
            for _ in 0..m.dt {
                f = f.dt();
            }
            for _ in 0..m.dx {
                f = f.dx();
            }
            if m.shift != 0 {
                f = f.shift(m.shift);
            }
            for _ in 0..m.t {
                f = f.mul_t();
            }
            for _ in 0..m.x {
                f = f.mul_x();
            }
            for (k, d) in f.terms {
                out.add_term(k, d * c);
            }
        }
        Ok(out)
    }

    /// Exact value at `t = t₀ + 4zn`, normalized by `g(t₀) = 1`, as a map
    /// `(κ, x-power) → coefficient`. Only `ρ` enters: `g(t₀ + 4zn) = ρⁿ`.
    pub fn at_lattice(&self, t0: &Rational, n: i64) -> BTreeMap<(Rational, u32), Rational> {
        let t = t0 + &self.z * int(4 * n);
        let mut out: BTreeMap<(Rational, u32), Rational> = BTreeMap::new();
        for (k, c) in &self.terms {
            let v = c * pow(&t, k.t as i64) * pow(&k.rho, n);
            *out.entry((k.kappa.clone(), k.x)).or_insert_with(Rational::zero) += v;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Floating-point value at `(x, t₀ + 4zn)` with `g(t₀ + 4zn) = ρⁿ e^{4zωn}`.
    pub fn sample(&self, x: f64, t0: &Rational, n: i64) -> f64 {
        let t = rational_to_f64(&(t0 + &self.z * int(4 * n)));
        let step = rational_to_f64(&(&self.z * int(4))) * n as f64;
        self.terms
            .iter()
            .map(|(k, c)| {
                let temporal = rational_to_f64(&k.rho).powi(n as i32) * (rational_to_f64(&k.omega) * step).exp();
                rational_to_f64(c)
                    * x.powi(k.x as i32)
                    * t.powi(k.t as i32)
                    * (rational_to_f64(&k.kappa) * x).exp()
                    * temporal
            })
            .sum()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, c) in &self.terms {
            let mut body = Vec::new();
            for (name, p) in [("x", k.x), ("t", k.t)] {
                match p {
                    0 => {}
                    1 => body.push(name.to_string()),
                    _ => body.push(format!("{name}^{p}")),
                }
            }
            if !k.kappa.is_zero() {
                body.push(format!("exp({}*x)", k.kappa));
            }
            if !k.rho.is_one() || !k.omega.is_zero() {
                body.push(format!("τ[ρ={}, ω={}]", k.rho, k.omega));
            }
            let body = body.join(" ");
            let term = match (body.is_empty(), c.is_one(), *c == -Rational::one()) {
                (true, _, _) => c.to_string(),
                (false, true, _) => body,
                (false, _, true) => format!("-{body}"),
                _ => format!("{c}*{body}"),
            };
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }

    pub fn to_record(&self, label: &str, residual: &Self) -> SolutionRecord {
        SolutionRecord {
            label: label.to_string(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| TermRecord {
                    coefficient: c.to_string(),
                    x_power: k.x,
                    t_power: k.t,
                    kappa: k.kappa.to_string(),
                    rho: k.rho.to_string(),
                    omega: k.omega.to_string(),
                })
                .collect(),
            rendered: self.render(),
            residual: residual.render(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TermRecord {
    pub coefficient: String,
    pub x_power: u32,
    pub t_power: u32,
    pub kappa: String,
    pub rho: String,
    pub omega: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionRecord {
    pub label: String,
    pub terms: Vec<TermRecord>,
    pub rendered: String,
    pub residual: String,
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

fn require_mass(p: &RealizationParams) -> Result<(), SchrodingerError> {
    if p.m.is_zero() {
        return Err(SchrodingerError::ZeroMass);
    }
    Ok(())
}

/// `φₙ = Σⱼ n!/((n−2j)! j! (2m)ʲ) x^{n−2j} qⱼ(t)` with the rising product
/// `qⱼ(t) = t(t+4z)⋯(t+4z(j−1))`, so that the backward difference sends
/// `qⱼ` to `j·qⱼ₋₁`. Classically `qⱼ = tʲ`.
pub fn heat_polynomial(n: u32, p: &RealizationParams) -> Result<ExpPolyFunction, SchrodingerError> {
    require_mass(p)?;
    let z = &p.z;
    let step = if p.classical { int(0) } else { int(4) * z };
    let mut f = ExpPolyFunction::zero(z);
    for j in 0..=n / 2 {
        let c = factorial(n) / (factorial(n - 2 * j) * factorial(j) * pow(&(int(2) * &p.m), j as i64));
        // qⱼ as coefficients of t^l
        let mut q = vec![int(1)];
        for i in 0..j {
            let shift = &step * int(i as i64);
            let mut next = vec![int(0); q.len() + 1];
            for (l, a) in q.iter().enumerate() {
                next[l + 1] += a.clone();
                next[l] += a * &shift;
            }
            q = next;
        }
        for (l, a) in q.into_iter().enumerate() {
            f.add_term(FnTerm::polynomial(n - 2 * j, l as u32), &c * a);
        }
    }
    Ok(f)
}

/// `e^{κx}` times a temporal factor: per-step factor `ρ = (1 − 2zκ²/m)⁻¹`
/// (with `ω = 0`) for the discrete equation, rate `ω = κ²/(2m)` (with
/// `ρ = 1`) classically.
pub fn exponential_solution(kappa: &Rational, p: &RealizationParams) -> Result<ExpPolyFunction, SchrodingerError> {
    require_mass(p)?;
    let k2 = kappa * kappa;
    let (rho, omega) = if p.classical {
        (int(1), &k2 / (int(2) * &p.m))
    } else {
        let denom = int(1) - int(2) * &p.z * &k2 / &p.m;
        if denom.is_zero() {
            return Err(SchrodingerError::DegenerateKappa(kappa.clone()));
        }
        (denom.recip(), int(0))
    };
    let term = FnTerm { kappa: kappa.clone(), rho, omega, x: 0, t: 0 };
    ExpPolyFunction::from_terms(&p.z, [(term, int(1))])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Heat polynomials of degree `0..=max_degree`.
    Polynomial { max_degree: u32 },
    Exponential { kappas: Vec<Rational> },
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub label: String,
    pub function: ExpPolyFunction,
    /// `E φ`; zero for a certified solution.
    pub residual: ExpPolyFunction,
}

impl Solution {
    pub fn certified(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn kappa_label(kappa: &Rational) -> String {
    format!("exponential/κ={kappa}")
}

pub fn exact_solutions(p: &RealizationParams, family: &Family) -> Result<Vec<Solution>, SchrodingerError> {
    let e = casimir(p)?;
    let mut out = Vec::new();
    let mut push = |label: String, function: ExpPolyFunction| -> Result<(), SchrodingerError> {
        let residual = function.apply(&e)?;
        out.push(Solution { label, function, residual });
        Ok(())
    };
    match family {
        Family::Polynomial { max_degree } => {
            for n in 0..=*max_degree {
                push(format!("heat-polynomial/n={n}"), heat_polynomial(n, p)?)?;
            }
        }
        Family::Exponential { kappas } => {
            for k in kappas {
                push(kappa_label(k), exponential_solution(k, p)?)?;
            }
        }
    }
    Ok(out)
}

/// `φ′ = S φ` for a certified solution `φ`, with `E φ′` as the residual.
pub fn apply_and_recheck(
    generator: &str,
    phi: &ExpPolyFunction,
    p: &RealizationParams,
) -> Result<(ExpPolyFunction, ExpPolyFunction), SchrodingerError> {
    let e = casimir(p)?;
    let before = phi.apply(&e)?;
    if !before.is_zero() {
        return Err(SchrodingerError::NotASolution(before.render()));
    }
    let image = phi.apply(&realize(generator, p)?)?;
    let residual = image.apply(&e)?;
    Ok((image, residual))
}

/// `[E, S] φ` computed on the canonical commutator and as `E(Sφ) − S(Eφ)`;
/// returns the difference.
pub fn operator_function_gap(
    generator: &str,
    phi: &ExpPolyFunction,
    p: &RealizationParams,
) -> Result<ExpPolyFunction, SchrodingerError> {
    let e = casimir(p)?;
    let s = realize(generator, p)?;
    let direct = phi.apply(&e.commutator(&s))?;
    let composed = phi.apply(&s)?.apply(&e)?.sub(&phi.apply(&e)?.apply(&s)?);
    Ok(direct.sub(&composed))
}

/// Certification, re-certification of all six images and the
/// operator/function agreement for every solution of both families.
pub fn verify_solutions(
    p: &RealizationParams,
    max_degree: u32,
    kappas: &[Rational],
) -> Result<VerificationReport, SchrodingerError> {
    let mut report = VerificationReport::new();
    let mut solutions = exact_solutions(p, &Family::Polynomial { max_degree })?;
    let e = casimir(p)?;
    for k in kappas {
        match exponential_solution(k, p) {
            Ok(function) => {
                let residual = function.apply(&e)?;
                solutions.push(Solution { label: kappa_label(k), function, residual });
            }
            Err(err @ SchrodingerError::DegenerateKappa(_)) => {
                let entry = CheckEntry::new("discrete-se", format!("solution/{}", kappa_label(k)));
                report.push(p.tag(entry).outcome(false, err.to_string()));
            }
            Err(err) => return Err(err),
        }
    }
    for s in &solutions {
        let start = Instant::now();
        let entry = p.tag(CheckEntry::new("discrete-se", format!("solution/{}", s.label)));
        report.push(entry.residual(s.certified(), || s.residual.render()).since(start));
        if !s.certified() {
            continue;
        }
        for g in GENERATORS {
            let start = Instant::now();
            let (_, residual) = apply_and_recheck(g, &s.function, p)?;
            let entry = p.tag(CheckEntry::new("discrete-se", format!("recheck/{g}/{}", s.label)));
            report.push(entry.residual(residual.is_zero(), || residual.render()).since(start));

            let start = Instant::now();
            let gap = operator_function_gap(g, &s.function, p)?;
            let entry = p.tag(CheckEntry::new("discrete-se", format!("operator-function/{g}/{}", s.label)));
            report.push(entry.residual(gap.is_zero(), || gap.render()).since(start));
        }
    }
    Ok(report)
}

/// Writes `x,t,value` rows for `x` on `nx` evenly spaced points of
/// `[x0, x1]` and `t = t₀ + 4zn`, `n = 0..steps`.
pub fn sample_csv<W: Write>(
    phi: &ExpPolyFunction,
    x0: &Rational,
    x1: &Rational,
    nx: usize,
    t0: &Rational,
    steps: usize,
    out: W,
) -> Result<(), SchrodingerError> {
    if !phi.z().is_positive() {
        return Err(SchrodingerError::NonPositiveZ(phi.z().clone()));
    }
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| SchrodingerError::Csv(e.to_string());
    w.write_record(["x", "t", "value"]).map_err(csv_err)?;
    for n in 0..steps as i64 {
        let t = t0 + phi.z() * int(4 * n);
        for i in 0..nx {
            let x = if nx == 1 { x0.clone() } else { x0 + (x1 - x0) * Rational::new(i.into(), (nx - 1).into()) };
            let v = phi.sample(rational_to_f64(&x), t0, n);
            w.write_record([x.to_string(), t.to_string(), v.to_string()]).map_err(csv_err)?;
        }
    }
    w.flush().map_err(|e| SchrodingerError::Csv(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn deformed(z: Rational, m: i64) -> RealizationParams {
        RealizationParams::deformed(z, int(m), frac(-1, 2))
    }

    #[test]
    fn printed_heat_polynomials() {
        let p = deformed(frac(1, 10), 3);
        assert_eq!(heat_polynomial(2, &p).unwrap().render(), "1/3*t + x^2");
        assert_eq!(heat_polynomial(3, &p).unwrap().render(), "x t + x^3");
        let classical = RealizationParams::classical(int(1), frac(-1, 2));
        assert_eq!(heat_polynomial(4, &classical).unwrap().render(), "3*t^2 + 6*x^2 t + x^4");
    }

    #[test]
    fn exponential_step_factor() {
        let p = deformed(frac(1, 10), 1);
        let f = exponential_solution(&int(1), &p).unwrap();
        assert_eq!(f.terms().keys().next().unwrap().rho, frac(5, 4));
        assert!(f.apply(&casimir(&p).unwrap()).unwrap().is_zero());
        let flat = exponential_solution(&int(0), &p).unwrap();
        assert_eq!(flat.terms().keys().next().unwrap().rho, int(1));
        let pole = deformed(frac(1, 2), 1);
        assert!(matches!(exponential_solution(&int(1), &pole), Err(SchrodingerError::DegenerateKappa(_))));
    }

    #[test]
    fn forward_difference_of_t_squared() {
        let z = frac(1, 4);
        let f = ExpPolyFunction::from_terms(&z, [(FnTerm::polynomial(0, 2), int(1))]).unwrap();
        let d = super::super::discrete_derivative(&z, super::super::Direction::Forward).unwrap();
        assert_eq!(f.apply(&d).unwrap().render(), "1 + 2*t");
    }

    #[test]
    fn not_a_solution_is_rejected() {
        let p = deformed(frac(1, 10), 1);
        let x2 = ExpPolyFunction::from_terms(&p.z, [(FnTerm::polynomial(2, 0), int(1))]).unwrap();
        assert!(matches!(apply_and_recheck("K", &x2, &p), Err(SchrodingerError::NotASolution(_))));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let p = deformed(frac(1, 10), 1);
        let f = heat_polynomial(2, &p).unwrap();
        let mut buf = Vec::new();
        sample_csv(&f, &int(0), &int(1), 3, &int(0), 2, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 7);
        assert!(text.starts_with("x,t,value\n0,0,0\n1/2,0,0.25\n"));
    }
}
