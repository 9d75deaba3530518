//! Mod-`l` Milnor K-theory examples: finite fields, and the subalgebra of
//! `K^M(Q) ⊗ F_l` generated by the symbols of the first few primes,
//! realized through its boundary (tame symbol) coordinates.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{is_prime, Matrix, PrimeField, Subspace};
use crate::pbw::{pbw_check, Monomial, OrderedGenerators, Parity, PbwReport};
use crate::quadratic::{build_algebra_slice, GradedSliceAlgebra, QuadraticPresentation};

/// A nonzero rational number in lowest terms with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::ZeroRational);
        }
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        let sign = den.signum();
        Ok(Self {
            num: sign * num / g,
            den: sign * den / g,
        })
    }

    pub fn integer(n: i64) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_negative(self) -> bool {
        self.num < 0
    }

    /// `1 - self`, or `None` when it vanishes.
    pub fn one_minus(self) -> Option<Self> {
        Self::new(self.den - self.num, self.den).ok()
    }

}

impl std::ops::Mul for Rational {
    type Output = Rational;

    fn mul(self, other: Self) -> Self {
        Self::new(self.num * other.num, self.den * other.den).expect("nonzero product")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn valuation_of(mut n: u64, p: u64) -> (i64, u64) {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    (v, n)
}

/// The `p`-adic valuation.
pub fn valuation(a: Rational, p: u64) -> i64 {
    valuation_of(a.num.unsigned_abs(), p).0 - valuation_of(a.den.unsigned_abs(), p).0
}

/// `a · p^{-ν_p(a)}` reduced mod `p`, as an element of `F_p^*`.
fn unit_part(a: Rational, p: u64) -> Result<u64> {
    let (_, n) = valuation_of(a.num.unsigned_abs(), p);
    let (_, d) = valuation_of(a.den.unsigned_abs(), p);
    let fp = PrimeField::new(p)?;
    let mut v = fp.mul((n % p) as u32, fp.inv((d % p) as u32));
    if a.num < 0 {
        v = fp.neg(v);
    }
    if v == 0 {
        return Err(Error::Internal(format!("unit part of {a} vanishes mod {p}")));
    }
    Ok(v as u64)
}

/// `{a,b}_p = (-1)^{ν_p(a)ν_p(b)} a^{ν_p(b)} / b^{ν_p(a)} mod p`, as a
/// residue in `1..p`.
pub fn tame_symbol(a: Rational, b: Rational, p: u64) -> Result<u64> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Precondition(format!("tame symbols need an odd prime, got {p}")));
    }
    let fp = PrimeField::new(p)?;
    let (va, vb) = (valuation(a, p), valuation(b, p));
    // the powers of p cancel: a^{vb} / b^{va} = u_a^{vb} / u_b^{va}
    let (ua, ub) = (unit_part(a, p)? as u32, unit_part(b, p)? as u32);
    let power = |u: u32, e: i64| {
        let x = fp.pow(u, e.unsigned_abs());
        if e < 0 {
            fp.inv(x)
        } else {
            x
        }
    };
    let mut v = fp.mul(power(ua, vb), fp.inv(power(ub, va)));
    if (va * vb).rem_euclid(2) == 1 {
        v = fp.neg(v);
    }
    if v == 0 {
        return Err(Error::Internal(format!("tame symbol {{{a},{b}}}_{p} is not a unit")));
    }
    Ok(v as u64)
}

/// `{a_1, …, a_n}_∞`: 1 when every argument is negative.
pub fn infinity_symbol(args: &[Rational]) -> u32 {
    u32::from(!args.is_empty() && args.iter().all(|a| a.is_negative()))
}

/// Smallest positive primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let fp = PrimeField::new(p)?;
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| fp.pow(g as u32, (p - 1) / q) != 1))
        .ok_or_else(|| Error::Internal(format!("no primitive root mod {p}")))
}

/// Discrete logarithm of `x` to the base `g` modulo `p`.
fn discrete_log(x: u64, g: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    for e in 0..p - 1 {
        if acc == x % p {
            return e;
        }
        acc = acc * g % p;
    }
    unreachable!("{g} is a primitive root mod {p}")
}

/// Whether `x` is an `l`-th power in `F_p^*`.
pub fn is_lth_power(x: u64, l: u64, p: u64) -> bool {
    let fp = PrimeField::new(p).expect("prime modulus");
    let m = p - 1;
    let e = m / gcd(m, l);
    fp.pow((x % p) as u32, e) == 1
}

pub fn first_primes(k: usize) -> Vec<u64> {
    (2u64..).filter(|&n| is_prime(n)).take(k).collect()
}

/// The truncation: `l` and the symbols of the first `pool_size` primes,
/// plus `{-1}` when `l = 2` (for odd `l` it vanishes mod `l`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSymbolAlgebraSpec {
    l: u64,
    pool: Vec<u64>,
    include_minus_one: bool,
}

impl RationalSymbolAlgebraSpec {
    pub fn new(l: u64, pool_size: usize) -> Result<Self> {
        if !is_prime(l) {
            return Err(Error::NotPrime(l));
        }
        if pool_size == 0 {
            return Err(Error::Precondition("the prime pool must be nonempty".into()));
        }
        Ok(Self {
            l,
            pool: first_primes(pool_size),
            include_minus_one: l == 2,
        })
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn pool(&self) -> &[u64] {
        &self.pool
    }

    pub fn include_minus_one(&self) -> bool {
        self.include_minus_one
    }

    /// Degree-one symbols in basis order: the pool ascending, then `-1`.
    pub fn generators(&self) -> Vec<Rational> {
        let mut gens: Vec<Rational> = self
            .pool
            .iter()
            .map(|&p| Rational::integer(p as i64).expect("nonzero"))
            .collect();
        if self.include_minus_one {
            gens.push(Rational::integer(-1).expect("nonzero"));
        }
        gens
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators().iter().map(Rational::to_string).collect()
    }

    /// Pool primes `p` with `l | p - 1`; these carry a tame coordinate.
    pub fn boundary_primes(&self) -> Vec<u64> {
        self.pool
            .iter()
            .copied()
            .filter(|&p| p != 2 && (p - 1) % self.l == 0)
            .collect()
    }
}

/// The split of the pool into `Q` and `R`, with `q(r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitGenerators {
    pub q_set: Vec<u64>,
    pub r_set: Vec<u64>,
    pub q_of_r: BTreeMap<u64, u64>,
    /// Basis indices of the generators from smallest to largest.
    pub order: Vec<usize>,
}

/// The ordering `{2} < Q < R < {-1}` for `l = 2` and `Q < R` otherwise,
/// ascending within `Q` and within `R`.
pub fn split_order(spec: &RationalSymbolAlgebraSpec) -> Result<SplitGenerators> {
    let l = spec.l;
    let candidates: Vec<u64> = if l == 2 {
        spec.pool.iter().copied().filter(|&p| p != 2).collect()
    } else {
        spec.pool.clone()
    };
    let in_r = |r: u64| {
        if l == 2 {
            is_lth_power(2, 2, r)
        } else {
            (r - 1).is_multiple_of(l)
        }
    };
    let (r_set, q_set): (Vec<u64>, Vec<u64>) = candidates.into_iter().partition(|&p| in_r(p));
    let mut q_of_r = BTreeMap::new();
    for &r in &r_set {
        let q = q_set
            .iter()
            .copied()
            .find(|&q| !is_lth_power(q, l, r))
            .ok_or(Error::PoolTooSmall { r })?;
        q_of_r.insert(r, q);
    }
    let index = |p: u64| spec.pool.iter().position(|&x| x == p).expect("pool prime");
    let mut order = Vec::new();
    if l == 2 {
        order.push(index(2));
    }
    order.extend(q_set.iter().map(|&q| index(q)));
    order.extend(r_set.iter().map(|&r| index(r)));
    if spec.include_minus_one {
        order.push(spec.pool.len());
    }
    Ok(SplitGenerators {
        q_set,
        r_set,
        q_of_r,
        order,
    })
}

/// Boundary coordinates: one `F_l` slot per boundary prime in degree 2,
/// and the real slot (for `l = 2`) in every degree `≥ 2`.
struct SymbolCoordinates {
    field: PrimeField,
    gens: Vec<Rational>,
    boundary: Vec<(u64, u64)>,
    real: bool,
}

impl SymbolCoordinates {
    fn new(spec: &RationalSymbolAlgebraSpec) -> Result<Self> {
        let boundary = spec
            .boundary_primes()
            .into_iter()
            .map(|p| Ok((p, primitive_root(p)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            field: PrimeField::new(spec.l)?,
            gens: spec.generators(),
            boundary,
            real: spec.l == 2,
        })
    }

    fn ambient(&self, n: usize) -> usize {
        match n {
            0 => 1,
            1 => self.gens.len(),
            2 => self.boundary.len() + usize::from(self.real),
            _ => usize::from(self.real),
        }
    }

    /// `∂`-coordinates of `{a, b}`.
    fn pair(&self, a: Rational, b: Rational) -> Result<Vec<u32>> {
        let l = self.field.l() as u64;
        let mut v = Vec::with_capacity(self.ambient(2));
        for &(p, g) in &self.boundary {
            let t = tame_symbol(a, b, p)?;
            v.push((discrete_log(t, g, p) % l) as u32);
        }
        if self.real {
            v.push(infinity_symbol(&[a, b]));
        }
        Ok(v)
    }

    fn real_part(&self, n: usize, x: &[u32]) -> u32 {
        match n {
            1 => self
                .gens
                .iter()
                .zip(x)
                .fold(0, |acc, (g, &c)| self.field.add(acc, self.field.mul(c, infinity_symbol(&[*g])))),
            _ => *x.last().expect("real slot"),
        }
    }

    /// Product of ambient vectors of degrees `i` and `j`.
    fn product(&self, table: &[Vec<Vec<u32>>], i: usize, x: &[u32], j: usize, y: &[u32]) -> Vec<u32> {
        let f = self.field;
        if i == 1 && j == 1 {
            let mut out = vec![0u32; self.ambient(2)];
            for (a, &xa) in x.iter().enumerate() {
                for (b, &yb) in y.iter().enumerate() {
                    let c = f.mul(xa, yb);
                    if c != 0 {
                        for (slot, &t) in out.iter_mut().zip(&table[a][b]) {
                            *slot = f.add(*slot, f.mul(c, t));
                        }
                    }
                }
            }
            out
        } else if self.real {
            vec![f.mul(self.real_part(i, x), self.real_part(j, y))]
        } else {
            Vec::new()
        }
    }
}

/// The subalgebra generated by the pool symbols, through degree `n_max`.
pub fn build_truncated_algebra(spec: &RationalSymbolAlgebraSpec, n_max: usize) -> Result<GradedSliceAlgebra> {
    if n_max < 2 {
        return Err(Error::Precondition(format!("n_max must be at least 2, got {n_max}")));
    }
    let coords = SymbolCoordinates::new(spec)?;
    let f = coords.field;
    let k = coords.gens.len();
    let table = coords
        .gens
        .iter()
        .map(|&a| coords.gens.iter().map(|&b| coords.pair(a, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut components = vec![Subspace::full(f, 1), Subspace::full(f, k)];
    for n in 2..=n_max {
        let spanning: Vec<Vec<u32>> = components[n - 1]
            .vectors()
            .iter()
            .flat_map(|x| {
                let table = &table;
                let coords = &coords;
                (0..k).map(move |g| {
                    let mut e = vec![0u32; k];
                    e[g] = 1;
                    coords.product(table, n - 1, x, 1, &e)
                })
            })
            .collect();
        components.push(Subspace::span(f, coords.ambient(n), &spanning));
    }
    let mut mult = BTreeMap::new();
    for i in 1..=n_max {
        for j in 1..=n_max - i {
            let (xs, ys) = (components[i].vectors(), components[j].vectors());
            let target = &components[i + j];
            let mut m = Matrix::zeros(f, target.dim(), xs.len() * ys.len());
            for (a, x) in xs.iter().enumerate() {
                for (b, y) in ys.iter().enumerate() {
                    let v = coords.product(&table, i, x, j, y);
                    let c = target
                        .coordinates(&v)
                        .ok_or_else(|| Error::Internal(format!("product of degrees {i},{j} left the subalgebra")))?;
                    for (r, val) in c.into_iter().enumerate() {
                        if val != 0 {
                            m.set(r, a * ys.len() + b, val);
                        }
                    }
                }
            }
            mult.insert((i, j), m);
        }
    }
    let mut a = GradedSliceAlgebra::new(f, components.iter().map(Subspace::dim).collect(), mult)?;
    a.set_generator_names(spec.generator_names())?;
    Ok(a)
}

/// Renders a monomial as a symbol `{a,b,…}` listing generators in order.
pub fn render_symbol(gens: &OrderedGenerators, m: &Monomial) -> String {
    let names: Vec<&str> = gens.word(m).iter().map(|&i| gens.names()[i].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

#[derive(Debug, Clone)]
pub struct MilnorReport {
    pub split: SplitGenerators,
    pub generators: OrderedGenerators,
    pub dims: Vec<usize>,
    pub s2: Vec<String>,
    pub predicted_s2: Vec<String>,
    pub pbw: PbwReport,
    /// `{2,2} = 0` and `{2,r} = 0` for `r ∈ R`, checked in coordinates
    /// (only meaningful for `l = 2` with `2` in the pool).
    pub two_relations_vanish: Option<bool>,
}

impl MilnorReport {
    pub fn s2_matches(&self) -> bool {
        let mut a = self.s2.clone();
        let mut b = self.predicted_s2.clone();
        a.sort();
        b.sort();
        a == b
    }

    pub fn holds(&self) -> bool {
        self.pbw.is_pbw && self.pbw.certified_koszul && self.s2_matches() && self.two_relations_vanish != Some(false)
    }
}

/// Runs the PBW check on the truncated algebra with the ordering above.
pub fn verify_pbw_milnor(spec: &RationalSymbolAlgebraSpec, n_max: usize) -> Result<MilnorReport> {
    let split = split_order(spec)?;
    let a = build_truncated_algebra(spec, n_max)?;
    let parity = if spec.l == 2 { Parity::Commutative } else { Parity::Skew };
    let gens = OrderedGenerators::new(spec.generator_names(), split.order.clone(), parity)?;
    let pbw = pbw_check(&a, &gens, n_max)?;
    let s2 = pbw.s(2).iter().map(|m| render_symbol(&gens, m)).collect();

    let mut predicted_s2 = Vec::new();
    if spec.l == 2 && spec.pool.contains(&2) {
        predicted_s2.extend(split.q_set.iter().map(|q| format!("{{2,{q}}}")));
    }
    predicted_s2.extend(split.q_of_r.iter().map(|(r, q)| format!("{{{q},{r}}}")));
    if spec.include_minus_one {
        predicted_s2.push("{-1,-1}".to_string());
    }

    let two_relations_vanish = if spec.l == 2 && spec.pool.contains(&2) {
        let coords = SymbolCoordinates::new(spec)?;
        let two = Rational::integer(2)?;
        let mut zero = coords.pair(two, two)?.iter().all(|&x| x == 0);
        for &r in &split.r_set {
            zero &= coords.pair(two, Rational::integer(r as i64)?)?.iter().all(|&x| x == 0);
        }
        Some(zero)
    } else {
        None
    };

    Ok(MilnorReport {
        split,
        generators: gens,
        dims: a.dims().to_vec(),
        s2,
        predicted_s2,
        pbw,
        two_relations_vanish,
    })
}

/// `K^M(F_q) ⊗ F_l` for `q = p^k`: one generator when `l | q - 1`, with
/// vanishing square.
pub fn finite_field_example(p: u64, k: u32, l: u64, n_max: usize) -> Result<GradedSliceAlgebra> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let field = PrimeField::new(l)?;
    let q = p
        .checked_pow(k)
        .filter(|_| k >= 1)
        .ok_or_else(|| Error::Precondition(format!("{p}^{k} is not a usable field size")))?;
    let d = usize::from((q - 1) % l == 0);
    let p = QuadraticPresentation::with_default_names(field, d, Subspace::full(field, d * d))?;
    Ok(build_algebra_slice(&p, n_max))
}
