use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::{One, Zero};

use super::element::{is_normal_word, NCElement, TensorElement, Word};
use super::AlgebraError;
use crate::scalar::{fraction_pair, int, Rational};
use crate::series::Series;

/// Default rewrite budget for a single normal-ordering call.
pub const DEFAULT_FUEL: u64 = 1_000_000;

/// A deformed enveloping algebra presented by PBW-ordered generators, the
/// normal-ordered value of every commutator, and (optionally) its Hopf maps
/// and the exponents of a factorized universal R-matrix.
///
/// All tables are stored at a fixed truncation order in `z`. The struct also
/// owns the memo tables of the rewriting engine.
pub struct AlgebraSpec {
    name: String,
    generators: Vec<String>,
    central: Vec<bool>,
    order: usize,
    relations: BTreeMap<(u8, u8), NCElement>,
    coproduct: Vec<TensorElement>,
    antipode: Vec<NCElement>,
    counit: Vec<Series>,
    r_factors: Vec<TensorElement>,
    fuel_limit: u64,
    insert_cache: Mutex<HashMap<(u8, Word), NCElement>>,
    coproduct_cache: Mutex<HashMap<Word, TensorElement>>,
}

impl Clone for AlgebraSpec {
    fn clone(&self) -> Self {
        AlgebraSpec {
            name: self.name.clone(),
            generators: self.generators.clone(),
            central: self.central.clone(),
            order: self.order,
            relations: self.relations.clone(),
            coproduct: self.coproduct.clone(),
            antipode: self.antipode.clone(),
            counit: self.counit.clone(),
            r_factors: self.r_factors.clone(),
            fuel_limit: self.fuel_limit,
            insert_cache: Mutex::new(HashMap::new()),
            coproduct_cache: Mutex::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AlgebraSpec")
            .field("name", &self.name)
            .field("generators", &self.generators)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

/// A noncommutative expression whose words may be in any order.
#[derive(Clone, Debug)]
pub struct RawExpr {
    pub order: usize,
    pub terms: Vec<(Word, Series)>,
}

impl RawExpr {
    pub fn new(order: usize) -> Self {
        RawExpr { order, terms: Vec::new() }
    }

    pub fn with(mut self, word: Word, coeff: Series) -> Self {
        self.terms.push((word, coeff));
        self
    }
}

struct Fuel {
    left: u64,
    limit: u64,
}

impl Fuel {
    fn tick(&mut self, stuck_at: impl FnOnce() -> String) -> Result<(), AlgebraError> {
        if self.left == 0 {
            return Err(AlgebraError::FuelExhausted { limit: self.limit, word: stuck_at() });
        }
        self.left -= 1;
        Ok(())
    }
}

impl AlgebraSpec {
    /// Builds a presentation. `relations` must hold an entry for every pair
    /// `(x, y)` with `x > y`, each already in normal form.
    pub fn new(
        name: &str,
        generators: &[&str],
        central: &[bool],
        order: usize,
        relations: BTreeMap<(u8, u8), NCElement>,
    ) -> Result<Self, AlgebraError> {
        let n = generators.len();
        assert_eq!(central.len(), n);
        for (&(x, y), rhs) in &relations {
            if x <= y || x as usize >= n {
                return Err(AlgebraError::BadRelationKey(x, y));
            }
            if !rhs.is_normal() {
                return Err(AlgebraError::RelationNotNormal(
                    generators[x as usize].to_string(),
                    generators[y as usize].to_string(),
                ));
            }
            if rhs.order() != order {
                return Err(AlgebraError::OrderMismatch(rhs.order(), order));
            }
        }
        for x in 0..n as u8 {
            for y in 0..x {
                if !relations.contains_key(&(x, y)) {
                    return Err(AlgebraError::MissingRelation(
                        generators[x as usize].to_string(),
                        generators[y as usize].to_string(),
                    ));
                }
            }
        }
        Ok(AlgebraSpec {
            name: name.to_string(),
            generators: generators.iter().map(|s| s.to_string()).collect(),
            central: central.to_vec(),
            order,
            relations,
            coproduct: Vec::new(),
            antipode: Vec::new(),
            counit: Vec::new(),
            r_factors: Vec::new(),
            fuel_limit: DEFAULT_FUEL,
            insert_cache: Mutex::new(HashMap::new()),
            coproduct_cache: Mutex::new(HashMap::new()),
        })
    }

    /// Attaches per-generator Hopf maps and R-matrix exponents.
    pub fn set_hopf(
        &mut self,
        coproduct: Vec<TensorElement>,
        antipode: Vec<NCElement>,
        counit: Vec<Series>,
        r_factors: Vec<TensorElement>,
    ) {
        let n = self.generators.len();
        assert_eq!(coproduct.len(), n);
        assert_eq!(antipode.len(), n);
        assert_eq!(counit.len(), n);
        self.coproduct = coproduct;
        self.antipode = antipode;
        self.counit = counit;
        self.r_factors = r_factors;
        self.coproduct_cache.lock().unwrap().clear();
    }

    pub fn with_fuel_limit(mut self, limit: u64) -> Self {
        self.fuel_limit = limit;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn is_central(&self, g: u8) -> bool {
        self.central[g as usize]
    }

    pub fn central_flags(&self) -> &[bool] {
        &self.central
    }

    pub fn has_hopf(&self) -> bool {
        !self.coproduct.is_empty()
    }

    pub fn relation(&self, x: u8, y: u8) -> Option<&NCElement> {
        self.relations.get(&(x, y))
    }

    pub fn relations(&self) -> &BTreeMap<(u8, u8), NCElement> {
        &self.relations
    }

    pub fn coproduct_table(&self) -> &[TensorElement] {
        &self.coproduct
    }

    pub fn antipode_table(&self) -> &[NCElement] {
        &self.antipode
    }

    pub fn counit_table(&self) -> &[Series] {
        &self.counit
    }

    pub fn r_factors(&self) -> &[TensorElement] {
        &self.r_factors
    }

    pub fn index_of(&self, name: &str) -> Result<u8, AlgebraError> {
        self.generators
            .iter()
            .position(|g| g == name)
            .map(|i| i as u8)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    /// Parses a whitespace-separated word such as `"A- A+"`. The result need
    /// not be normal-ordered.
    pub fn parse_word(&self, text: &str) -> Result<Word, AlgebraError> {
        text.split_whitespace().map(|g| self.index_of(g)).collect()
    }

    pub fn gen(&self, name: &str) -> Result<NCElement, AlgebraError> {
        Ok(NCElement::generator(self.index_of(name)?, self.order))
    }

    fn fuel(&self) -> Fuel {
        Fuel { left: self.fuel_limit, limit: self.fuel_limit }
    }

    fn check_order(&self, order: usize) -> Result<(), AlgebraError> {
        if order != self.order {
            return Err(AlgebraError::OrderMismatch(order, self.order));
        }
        Ok(())
    }

    /// `x · v` for a normal word `v`, rewritten to normal form by
    /// `x y = y x + [x, y]`.
    fn insert_left(&self, x: u8, v: &[u8], fuel: &mut Fuel) -> Result<NCElement, AlgebraError> {
        let y = match v.first() {
            Some(&y) if x > y => y,
            _ => {
                let mut w = Vec::with_capacity(v.len() + 1);
                w.push(x);
                w.extend_from_slice(v);
                return Ok(NCElement::word(w, self.order));
            }
        };
        let key = (x, v.to_vec());
        if let Some(hit) = self.insert_cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        fuel.tick(|| {
            let mut w = vec![x];
            w.extend_from_slice(v);
            self.render_word(&w)
        })?;
        let rest = &v[1..];
        let mut out = NCElement::zero(self.order);
        let swapped = self.insert_left(x, rest, fuel)?;
        for (w, c) in swapped.terms() {
            out.add_scaled(&self.insert_left(y, w, fuel)?, c);
        }
        let bracket = &self.relations[&(x, y)];
        for (w, c) in bracket.terms() {
            out.add_scaled(&self.mul_words(w, rest, fuel)?, c);
        }
        self.insert_cache.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    fn mul_words(&self, u: &[u8], v: &[u8], fuel: &mut Fuel) -> Result<NCElement, AlgebraError> {
        match (u.last(), v.first()) {
            (None, _) => return Ok(NCElement::word(v.to_vec(), self.order)),
            (_, None) => return Ok(NCElement::word(u.to_vec(), self.order)),
            (Some(a), Some(b)) if a <= b => {
                let mut w = u.to_vec();
                w.extend_from_slice(v);
                return Ok(NCElement::word(w, self.order));
            }
            _ => {}
        }
        let mut acc = NCElement::word(v.to_vec(), self.order);
        for &x in u.iter().rev() {
            let mut next = NCElement::zero(self.order);
            for (w, c) in acc.terms() {
                next.add_scaled(&self.insert_left(x, w, fuel)?, c);
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Normal form of the product of two words (either may be unordered).
    pub fn word_product(&self, u: &[u8], v: &[u8]) -> Result<NCElement, AlgebraError> {
        let mut fuel = self.fuel();
        let u = self.normal_word(u, &mut fuel)?;
        let mut out = NCElement::zero(self.order);
        for (w, c) in u.terms() {
            let vw = self.normal_word(v, &mut fuel)?;
            for (w2, c2) in vw.terms() {
                out.add_scaled(&self.mul_words(w, w2, &mut fuel)?, &(c * c2));
            }
        }
        Ok(out)
    }

    fn normal_word(&self, w: &[u8], fuel: &mut Fuel) -> Result<NCElement, AlgebraError> {
        if is_normal_word(w) {
            return Ok(NCElement::word(w.to_vec(), self.order));
        }
        let mut acc = NCElement::one(self.order);
        for &x in w.iter().rev() {
            let mut next = NCElement::zero(self.order);
            for (v, c) in acc.terms() {
                next.add_scaled(&self.insert_left(x, v, fuel)?, c);
            }
            acc = next;
        }
        Ok(acc)
    }

    /// PBW normal form of an arbitrary expression.
    pub fn normal_order(&self, raw: &RawExpr) -> Result<NCElement, AlgebraError> {
        self.check_order(raw.order)?;
        let n = self.generators.len() as u8;
        let mut fuel = self.fuel();
        let mut out = NCElement::zero(self.order);
        for (w, c) in &raw.terms {
            if let Some(&bad) = w.iter().find(|&&g| g >= n) {
                return Err(AlgebraError::UnknownGenerator(format!("#{bad}")));
            }
            self.check_order(c.order())?;
            out.add_scaled(&self.normal_word(w, &mut fuel)?, c);
        }
        Ok(out)
    }

    pub fn mul(&self, a: &NCElement, b: &NCElement) -> Result<NCElement, AlgebraError> {
        self.check_order(a.order())?;
        self.check_order(b.order())?;
        let mut fuel = self.fuel();
        let mut out = NCElement::zero(self.order);
        for (u, cu) in a.terms() {
            for (v, cv) in b.terms() {
                let c = cu * cv;
                if c.is_zero() {
                    continue;
                }
                out.add_scaled(&self.mul_words(u, v, &mut fuel)?, &c);
            }
        }
        Ok(out)
    }

    /// `normal_order(xy − yx)`
    pub fn commutator(&self, x: &NCElement, y: &NCElement) -> Result<NCElement, AlgebraError> {
        Ok(&self.mul(x, y)? - &self.mul(y, x)?)
    }

    /// Legwise product in the tensor square or cube.
    pub fn tensor_mul(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement, AlgebraError> {
        assert_eq!(a.rank(), b.rank(), "tensor rank mismatch");
        self.check_order(a.order())?;
        self.check_order(b.order())?;
        let mut fuel = self.fuel();
        let mut legs_cache: HashMap<(usize, &Word, &Word), NCElement> = HashMap::new();
        let mut out = TensorElement::zero(a.rank(), self.order);
        for (ka, ca) in a.terms() {
            for (kb, cb) in b.terms() {
                let c = ca * cb;
                if c.is_zero() {
                    continue;
                }
                let mut legs = Vec::with_capacity(a.rank());
                for i in 0..a.rank() {
                    let key = (i, &ka[i], &kb[i]);
                    let leg = match legs_cache.get(&key) {
                        Some(l) => l.clone(),
                        None => {
                            let l = self.mul_words(&ka[i], &kb[i], &mut fuel)?;
                            legs_cache.insert(key, l.clone());
                            l
                        }
                    };
                    legs.push(leg);
                }
                let refs: Vec<&NCElement> = legs.iter().collect();
                let prod = TensorElement::product_of(&refs);
                for (k, d) in prod.terms() {
                    out.add_term(k.clone(), d * &c);
                }
            }
        }
        Ok(out)
    }

    /// `exp(f)` for a tensor with no `z⁰` part, as a truncated sum.
    pub fn tensor_exp(&self, f: &TensorElement) -> Result<TensorElement, AlgebraError> {
        if f.terms().values().any(|c| !c.constant_term().is_zero()) {
            return Err(AlgebraError::NotNilpotent);
        }
        let mut out = TensorElement::one(f.rank(), self.order);
        let mut power = TensorElement::one(f.rank(), self.order);
        for n in 1..=self.order {
            power = self.tensor_mul(&power, f)?.scale_rational(&(Rational::one() / int(n as i64)));
            if power.is_zero() {
                break;
            }
            out = &out + &power;
        }
        Ok(out)
    }

    fn require_hopf(&self) -> Result<(), AlgebraError> {
        if self.coproduct.is_empty() {
            return Err(AlgebraError::NoHopfStructure(self.name.clone()));
        }
        Ok(())
    }

    /// `Δ` on a word, as the ordered product of generator coproducts.
    pub fn coproduct_word(&self, w: &[u8]) -> Result<TensorElement, AlgebraError> {
        self.require_hopf()?;
        if w.is_empty() {
            return Ok(TensorElement::one(2, self.order));
        }
        if w.len() == 1 {
            return Ok(self.coproduct[w[0] as usize].clone());
        }
        if let Some(hit) = self.coproduct_cache.lock().unwrap().get(w) {
            return Ok(hit.clone());
        }
        let (head, last) = w.split_at(w.len() - 1);
        let out = self.tensor_mul(&self.coproduct_word(head)?, &self.coproduct[last[0] as usize])?;
        self.coproduct_cache.lock().unwrap().insert(w.to_vec(), out.clone());
        Ok(out)
    }

    pub fn coproduct(&self, x: &NCElement) -> Result<TensorElement, AlgebraError> {
        self.check_order(x.order())?;
        let mut out = TensorElement::zero(2, self.order);
        for (w, c) in x.terms() {
            for (k, d) in self.coproduct_word(w)?.terms() {
                out.add_term(k.clone(), d * c);
            }
        }
        Ok(out)
    }

    /// `γ` extended anti-multiplicatively: `γ(xy) = γ(y)γ(x)`.
    pub fn antipode_word(&self, w: &[u8]) -> Result<NCElement, AlgebraError> {
        self.require_hopf()?;
        let mut acc = NCElement::one(self.order);
        for &g in w.iter().rev() {
            acc = self.mul(&acc, &self.antipode[g as usize])?;
        }
        Ok(acc)
    }

    pub fn antipode(&self, x: &NCElement) -> Result<NCElement, AlgebraError> {
        self.check_order(x.order())?;
        let mut out = NCElement::zero(self.order);
        for (w, c) in x.terms() {
            out.add_scaled(&self.antipode_word(w)?, c);
        }
        Ok(out)
    }

    pub fn counit_word(&self, w: &[u8]) -> Result<Series, AlgebraError> {
        self.require_hopf()?;
        Ok(w.iter().fold(Series::one(self.order), |acc, &g| &acc * &self.counit[g as usize]))
    }

    pub fn counit(&self, x: &NCElement) -> Result<Series, AlgebraError> {
        self.check_order(x.order())?;
        let mut out = Series::zero(self.order);
        for (w, c) in x.terms() {
            out = &out + &(&self.counit_word(w)? * c);
        }
        Ok(out)
    }

    /// `R = Π exp(fᵢ)` in the stored factor order.
    pub fn r_matrix(&self) -> Result<TensorElement, AlgebraError> {
        self.require_hopf()?;
        let mut r = TensorElement::one(2, self.order);
        for f in &self.r_factors {
            r = self.tensor_mul(&r, &self.tensor_exp(f)?)?;
        }
        Ok(r)
    }

    /// `R⁻¹ = Π exp(−fᵢ)` with the factor order reversed.
    pub fn r_matrix_inverse(&self) -> Result<TensorElement, AlgebraError> {
        self.require_hopf()?;
        let mut r = TensorElement::one(2, self.order);
        for f in self.r_factors.iter().rev() {
            r = self.tensor_mul(&r, &self.tensor_exp(&-f)?)?;
        }
        Ok(r)
    }

    pub fn render_word(&self, w: &[u8]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = &self.generators[w[i] as usize];
            parts.push(if j - i == 1 { name.clone() } else { format!("{name}^{}", j - i) });
            i = j;
        }
        parts.join(" ")
    }

    /// Canonical text of an element, e.g. `2*A+ + 4*z*B+ A+`. Terms are
    /// listed by word length, then lexicographically.
    pub fn render(&self, x: &NCElement) -> String {
        let mut terms: Vec<_> = x.terms().iter().collect();
        terms.sort_by_key(|(w, _)| (w.len(), *w));
        join_terms(terms.into_iter().map(|(w, c)| render_term(&c.to_string(), &self.render_word(w), w.is_empty())))
    }

    pub fn render_tensor(&self, t: &TensorElement) -> String {
        let mut terms: Vec<_> = t.terms().iter().collect();
        terms.sort_by_key(|(k, _)| (k.iter().map(Vec::len).sum::<usize>(), *k));
        let terms = terms.into_iter().map(|(k, c)| {
            let legs: Vec<String> = k.iter().map(|w| self.render_word(w)).collect();
            render_term(&c.to_string(), &format!("({})", legs.join(" ⊗ ")), false)
        });
        join_terms(terms)
    }

    /// JSON dump of the presentation and Hopf tables with exact fractions.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        let series = |s: &Series| serde_json::Value::Array(s.coeffs().iter().map(fraction_pair).collect());
        let names = |w: &Word| -> Vec<String> { w.iter().map(|&g| self.generators[g as usize].clone()).collect() };
        let element = |e: &NCElement| -> Vec<serde_json::Value> {
            e.terms().iter().map(|(w, c)| json!({ "word": names(w), "coeffs": series(c) })).collect()
        };
        let tensor = |t: &TensorElement| -> Vec<serde_json::Value> {
            t.terms()
                .iter()
                .map(|(k, c)| json!({ "legs": k.iter().map(names).collect::<Vec<_>>(), "coeffs": series(c) }))
                .collect()
        };
        let relations: Vec<_> = self
            .relations
            .iter()
            .map(|(&(x, y), v)| {
                json!({
                    "bracket": [self.generators[x as usize].clone(), self.generators[y as usize].clone()],
                    "value": element(v),
                })
            })
            .collect();
        let per_gen = |f: &dyn Fn(usize) -> serde_json::Value| -> serde_json::Value {
            serde_json::Value::Object(
                self.generators.iter().enumerate().map(|(i, g)| (g.clone(), f(i))).collect(),
            )
        };
        let mut out = json!({
            "name": self.name,
            "order": self.order,
            "generators": self.generators,
            "central": self.generators.iter().zip(&self.central).filter(|(_, &c)| c).map(|(g, _)| g.clone()).collect::<Vec<_>>(),
            "relations": relations,
        });
        if self.has_hopf() {
            out["coproduct"] = per_gen(&|i| json!(tensor(&self.coproduct[i])));
            out["antipode"] = per_gen(&|i| json!(element(&self.antipode[i])));
            out["counit"] = per_gen(&|i| series(&self.counit[i]));
            out["r_matrix_exponents"] = json!(self.r_factors.iter().map(tensor).collect::<Vec<_>>());
        }
        out
    }
}

fn render_term(coef: &str, body: &str, scalar_only: bool) -> String {
    if scalar_only {
        return coef.to_string();
    }
    let compound = coef.trim_start_matches('-').contains([' ', '+']);
    match coef {
        "1" => body.to_string(),
        "-1" => format!("-{body}"),
        _ if compound => format!("({coef})*{body}"),
        _ => format!("{coef}*{body}"),
    }
}

fn join_terms(terms: impl Iterator<Item = String>) -> String {
    let mut out = String::new();
    for (i, t) in terms.enumerate() {
        if i == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
