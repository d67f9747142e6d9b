//! Univariate polynomials over GF(p) or ℚ, characteristic polynomials and factorization.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// Coefficients from the constant term upwards; never has a trailing zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_ints(field: Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.int(c)).collect())
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::new(c.field(), vec![c])
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field.one())
    }

    /// `c · x^k`.
    pub fn monomial(c: Scalar, k: usize) -> Poly {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly::new(field, coeffs)
    }

    pub fn x(field: Field) -> Poly {
        Poly::monomial(field.one(), 1)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Poly {
        match self.lead().inv() {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(self.field, out)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.lead().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= &c * dc;
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.int(i as i64))
            .collect();
        Poly::new(self.field, coeffs)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `f(A)` for a square matrix `A`, by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let n = a.rows();
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a).add(&Matrix::identity(self.field, n).scale(c));
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Deterministic total order: by degree, then coefficients from the top.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                let o = scalar_cmp(a, b);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

fn scalar_cmp(a: &Scalar, b: &Scalar) -> Ordering {
    match (a.residue(), b.residue()) {
        (Some(x), Some(y)) => x.cmp(&y),
        _ => a.rational().cmp(&b.rational()),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = match c.residue() {
                Some(v) => v.to_string(),
                None => c.to_string(),
            };
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = body == "1";
            match i {
                0 => write!(f, "{body}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{body}x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "{body}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `det(x·I − A)` via reduction to Hessenberg form.
pub fn char_poly(a: &Matrix) -> Poly {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let field = a.field();
    let n = a.rows();
    let mut h: Vec<Vec<Scalar>> = (0..n).map(|r| a.row(r)).collect();
    for m in 1..n.saturating_sub(1) {
        let Some(p) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
            continue;
        };
        if p != m {
            h.swap(p, m);
            for row in h.iter_mut() {
                row.swap(p, m);
            }
        }
        let inv = h[m][m - 1].inv().unwrap();
        for j in m + 1..n {
            if h[j][m - 1].is_zero() {
                continue;
            }
            let u = &h[j][m - 1] * &inv;
            let (upper, lower) = h.split_at_mut(j);
            for (x, y) in lower[0].iter_mut().zip(&upper[m]) {
                *x -= &u * y;
            }
            for row in h.iter_mut() {
                let t = &u * &row[j];
                row[m] += t;
            }
        }
    }
    // p[k] is the characteristic polynomial of the leading k×k block.
    let mut p = vec![Poly::one(field)];
    let x = Poly::x(field);
    for k in 0..n {
        let mut next = x.sub(&Poly::constant(h[k][k].clone())).mul(&p[k]);
        let mut prod = field.one();
        for i in 1..=k {
            prod = &prod * &h[k - i + 1][k - i];
            let c = &prod * &h[k - i][k];
            next = next.sub(&p[k - i].scale(&c));
        }
        p.push(next);
    }
    p.pop().unwrap()
}

/// A monic irreducible factor together with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub poly: Poly,
    pub multiplicity: usize,
}

/// Factors a nonzero polynomial into monic irreducibles, in canonical order.
pub fn factor(f: &Poly) -> Result<Vec<Factor>> {
    if f.is_zero() {
        return Err(Error::Malformed("cannot factor the zero polynomial".into()));
    }
    let mut out: Vec<Factor> = Vec::new();
    for (part, mult) in square_free(&f.monic()) {
        let pieces = match f.field() {
            Field::Prime(p) => berlekamp(&part, p),
            Field::Rationals => factor_rational_square_free(&part)?,
        };
        for poly in pieces {
            out.push(Factor { poly, multiplicity: mult });
        }
    }
    out.sort_by(|a, b| a.poly.canonical_cmp(&b.poly).then(a.multiplicity.cmp(&b.multiplicity)));
    Ok(out)
}

/// Square-free decomposition of a monic polynomial: pairs `(g, m)` with `f = Π g^m`.
pub fn square_free(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let field = f.field();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).unwrap();
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        c = c.div_exact(&y).unwrap();
        w = y;
    }
    if c.degree().unwrap_or(0) > 0 {
        // What is left is a p-th power in characteristic p.
        let p = field.characteristic() as usize;
        let root = Poly::new(field, c.coeffs.iter().step_by(p).cloned().collect());
        for (g, m) in square_free(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Berlekamp's algorithm for a monic square-free polynomial over GF(p).
fn berlekamp(f: &Poly, p: u64) -> Vec<Poly> {
    let field = f.field();
    let d = f.degree().unwrap();
    if d <= 1 {
        return vec![f.clone()];
    }
    // Column i of q holds x^{ip} mod f.
    let xp = Poly::x(field).pow_mod(p, f);
    let mut q = Matrix::zeros(field, d, d);
    let mut cur = Poly::one(field);
    for i in 0..d {
        for j in 0..d {
            q.set(j, i, cur.coeff(j));
        }
        cur = cur.mul(&xp).rem(f);
    }
    let kernel = q.sub(&Matrix::identity(field, d)).kernel();
    let k = kernel.cols();
    let mut factors = vec![f.clone()];
    if k == 1 {
        return factors;
    }
    let elements = field.elements().expect("finite field");
    for c in 0..k {
        let g = Poly::new(field, kernel.column(c));
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::new();
        for h in factors {
            if h.degree() == Some(1) || next.len() + 1 > k {
                next.push(h);
                continue;
            }
            let mut rest = h;
            for s in &elements {
                if rest.degree() == Some(1) {
                    break;
                }
                let shifted = g.sub(&Poly::constant(s.clone()));
                let gg = rest.gcd(&shifted);
                let dg = gg.degree().unwrap_or(0);
                if dg > 0 && dg < rest.degree().unwrap() {
                    rest = rest.div_exact(&gg).unwrap();
                    next.push(gg);
                }
            }
            next.push(rest);
        }
        factors = next;
        if factors.len() == k {
            break;
        }
    }
    factors
}

/// Evaluation budget for Kronecker's method.
const KRONECKER_BUDGET: u64 = 4_000_000;

/// Factors a monic square-free polynomial over ℚ: rational roots first, then Kronecker.
fn factor_rational_square_free(f: &Poly) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    let mut rest = primitive_integer(f);
    // Rational roots r/s with r | a_0, s | a_n.
    while let Some(root) = rational_root(&rest) {
        out.push(Poly::new(Field::Rationals, vec![rat_scalar(-root.clone()), Field::Rationals.one()]));
        rest = exact_div_int(&rest, &[-root.numer().clone(), root.denom().clone()]);
    }
    let mut pending = vec![rest];
    while let Some(g) = pending.pop() {
        let deg = g.len() - 1;
        if deg == 0 {
            continue;
        }
        if deg <= 3 {
            out.push(int_to_monic(&g));
            continue;
        }
        match kronecker_split(&g)? {
            Some((a, b)) => {
                pending.push(a);
                pending.push(b);
            }
            None => out.push(int_to_monic(&g)),
        }
    }
    Ok(out)
}

fn rat_scalar(r: BigRational) -> Scalar {
    Scalar::Rat(r)
}

/// Scales a rational polynomial to a primitive integer polynomial with positive lead.
fn primitive_integer(f: &Poly) -> Vec<BigInt> {
    let rats: Vec<BigRational> = f.coeffs.iter().map(|c| c.rational().unwrap().clone()).collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    normalize_int(ints)
}

fn normalize_int(mut ints: Vec<BigInt>) -> Vec<BigInt> {
    while ints.len() > 1 && ints.last().unwrap().is_zero() {
        ints.pop();
    }
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| &c / &g * &sign).collect()
}

fn int_to_monic(g: &[BigInt]) -> Poly {
    let lead = BigRational::from_integer(g.last().unwrap().clone());
    Poly::new(
        Field::Rationals,
        g.iter().map(|c| Scalar::Rat(BigRational::from_integer(c.clone()) / &lead)).collect(),
    )
}

fn eval_int(g: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in g.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

fn rational_root(g: &[BigInt]) -> Option<BigRational> {
    if g.len() < 2 {
        return None;
    }
    if g[0].is_zero() {
        return Some(BigRational::zero());
    }
    let nums = divisors(&g[0])?;
    let dens = divisors(g.last().unwrap())?;
    for r in &nums {
        for s in &dens {
            for sign in [1, -1] {
                let cand = BigRational::new(r * BigInt::from(sign), s.clone());
                if eval_int(g, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Positive divisors, or `None` when the number is too large to factor by trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Exact division of integer polynomials (both from the constant term upwards).
fn exact_div_int(f: &[BigInt], d: &[BigInt]) -> Vec<BigInt> {
    let to_poly = |v: &[BigInt]| {
        Poly::new(
            Field::Rationals,
            v.iter().map(|c| Scalar::Rat(BigRational::from_integer(c.clone()))).collect(),
        )
    };
    let q = to_poly(f).div_exact(&to_poly(d)).expect("exact integer division");
    primitive_integer(&q)
}

/// Searches for a factor of degree `2..=deg/2` by interpolating divisor values.
fn kronecker_split(g: &[BigInt]) -> Result<Option<(Vec<BigInt>, Vec<BigInt>)>> {
    let deg = g.len() - 1;
    // Candidate evaluation points, fewest divisors first.
    let mut points: Vec<(usize, i64, Vec<BigInt>)> = Vec::new();
    for a in -30i64..=30 {
        let v = eval_int(g, &BigRational::from_integer(BigInt::from(a))).to_integer();
        if v.is_zero() {
            continue;
        }
        if let Some(divs) = divisors(&v) {
            points.push((divs.len(), a, divs));
        }
    }
    points.sort_by_key(|(n, a, _)| (*n, a.abs(), *a));
    for d in 2..=deg / 2 {
        if points.len() < d + 1 {
            return Err(Error::Malformed("not enough evaluation points for factorization".into()));
        }
        let chosen = &points[..d + 1];
        let cost: u64 = chosen
            .iter()
            .enumerate()
            .map(|(i, (n, _, _))| if i == 0 { *n as u64 } else { 2 * *n as u64 })
            .try_fold(1u64, |acc, n| acc.checked_mul(n))
            .unwrap_or(u64::MAX);
        if cost > KRONECKER_BUDGET {
            return Err(Error::Malformed(format!(
                "factoring a degree-{deg} rational polynomial is beyond the search budget"
            )));
        }
        let xs: Vec<BigRational> = chosen.iter().map(|(_, a, _)| BigRational::from_integer(BigInt::from(*a))).collect();
        let mut idx = vec![0usize; d + 1];
        let options: Vec<Vec<BigInt>> = chosen
            .iter()
            .enumerate()
            .map(|(i, (_, _, divs))| {
                let mut o: Vec<BigInt> = divs.clone();
                if i > 0 {
                    o.extend(divs.iter().map(|v| -v));
                }
                o
            })
            .collect();
        loop {
            let ys: Vec<BigRational> = idx.iter().zip(&options).map(|(&i, o)| BigRational::from_integer(o[i].clone())).collect();
            if let Some(h) = interpolate_integer(&xs, &ys, d) {
                let hp = Poly::new(
                    Field::Rationals,
                    h.iter().map(|c| Scalar::Rat(BigRational::from_integer(c.clone()))).collect(),
                );
                let gp = Poly::new(
                    Field::Rationals,
                    g.iter().map(|c| Scalar::Rat(BigRational::from_integer(c.clone()))).collect(),
                );
                if let Some(q) = gp.div_exact(&hp) {
                    return Ok(Some((normalize_int(h), primitive_integer(&q))));
                }
            }
            // Next index tuple.
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < options[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    Ok(None)
}

/// Lagrange interpolation; returns integer coefficients when the interpolant has exact degree `d`.
fn interpolate_integer(xs: &[BigRational], ys: &[BigRational], d: usize) -> Option<Vec<BigInt>> {
    let mut coeffs = vec![BigRational::zero(); xs.len()];
    for (i, xi) in xs.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = &ys[i] / denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    if coeffs[d].is_zero() || coeffs.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(coeffs.into_iter().map(|c| c.to_integer()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn product(factors: &[Factor]) -> Poly {
        let field = factors[0].poly.field();
        factors
            .iter()
            .fold(Poly::one(field), |acc, f| acc.mul(&f.poly.pow(f.multiplicity)))
    }

    #[test]
    fn divrem_reconstructs() {
        let f = Field::Rationals;
        let a = Poly::from_ints(f, &[1, -3, 0, 2, 5]);
        let b = Poly::from_ints(f, &[2, 0, 3]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn char_poly_matches_determinants() {
        let mut rng = crate::rng(7);
        for field in [Field::Rationals, Field::prime(101).unwrap()] {
            for n in 1..6 {
                let rows: Vec<Vec<Scalar>> = (0..n).map(|_| field.random_vec(&mut rng, n)).collect();
                let a = Matrix::from_rows(field, &rows);
                let p = char_poly(&a);
                assert_eq!(p.degree(), Some(n));
                for s in -3..4 {
                    let s = field.int(s);
                    let m = Matrix::identity(field, n).scale(&s).sub(&a);
                    assert_eq!(p.eval(&s), m.determinant());
                }
                assert!(p.eval_matrix(&a).is_zero(), "Cayley-Hamilton");
            }
        }
    }

    #[test]
    fn factors_over_small_primes_match_brute_force() {
        let mut rng = crate::rng(11);
        for p in [2u64, 3, 5] {
            let field = Field::prime(p).unwrap();
            for _ in 0..40 {
                let deg = rng.gen_range(1..7);
                let mut c = field.random_vec(&mut rng, deg);
                c.push(field.one());
                let f = Poly::new(field, c);
                let fs = factor(&f).unwrap();
                assert_eq!(product(&fs), f);
                for fac in &fs {
                    assert!(is_irreducible_brute(&fac.poly), "{} reducible over GF({p})", fac.poly);
                }
            }
        }
    }

    fn is_irreducible_brute(f: &Poly) -> bool {
        let field = f.field();
        let d = f.degree().unwrap();
        let elems = field.elements().unwrap();
        for dg in 1..=d / 2 {
            // Every monic polynomial of degree dg.
            let count = elems.len().pow(dg as u32);
            for mut code in 0..count {
                let mut c = Vec::new();
                for _ in 0..dg {
                    c.push(elems[code % elems.len()].clone());
                    code /= elems.len();
                }
                c.push(field.one());
                if f.rem(&Poly::new(field, c)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn factors_over_rationals() {
        let f = Field::Rationals;
        // (x^2 + 1)^2 (x^2 − 2)(x − 3)(2x + 1)(x^4 + x + 1) · (x^2 + x + 1)(x^2 − x + 1)
        let parts = [
            Poly::from_ints(f, &[1, 0, 1]),
            Poly::from_ints(f, &[1, 0, 1]),
            Poly::from_ints(f, &[-2, 0, 1]),
            Poly::from_ints(f, &[-3, 1]),
            Poly::from_ints(f, &[1, 2]),
            Poly::from_ints(f, &[1, 1, 0, 0, 1]),
        ];
        let g = parts.iter().fold(Poly::one(f), |a, b| a.mul(b));
        let fs = factor(&g).unwrap();
        assert_eq!(product(&fs), g.monic());
        assert_eq!(fs.len(), 5);
        assert!(fs.iter().any(|x| x.poly == Poly::from_ints(f, &[1, 0, 1]) && x.multiplicity == 2));
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 − 2x + 2) has no rational root.
        let h = Poly::from_ints(f, &[4, 0, 0, 0, 1]);
        let fh = factor(&h).unwrap();
        assert_eq!(fh.len(), 2);
        let cyc = Poly::from_ints(f, &[1, 1, 0, 0, 1]);
        assert_eq!(factor(&cyc).unwrap().len(), 1);
    }

    #[test]
    fn square_free_in_characteristic_p() {
        let field = Field::prime(3).unwrap();
        // (x + 1)^3 (x^2 + 1)^2 (x)
        let g = Poly::from_ints(field, &[1, 1])
            .pow(3)
            .mul(&Poly::from_ints(field, &[1, 0, 1]).pow(2))
            .mul(&Poly::x(field));
        let fs = factor(&g).unwrap();
        assert_eq!(product(&fs), g);
        assert!(fs.iter().any(|x| x.multiplicity == 3));
        assert!(fs.iter().any(|x| x.multiplicity == 2));
    }

    #[test]
    fn display_is_readable() {
        let f = Field::Rationals;
        assert_eq!(Poly::from_ints(f, &[-2, 0, 1]).to_string(), "x^2 - 2");
        assert_eq!(Poly::from_ints(f, &[1, -1]).to_string(), "-x + 1");
        let g = Field::prime(5).unwrap();
        assert_eq!(Poly::from_ints(g, &[3, 1]).to_string(), "x + 3");
    }
}
