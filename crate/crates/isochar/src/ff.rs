//! Finite fields F_{p^n} with p >= 5, as F_p[x]/(f) for a canonical monic
//! irreducible f. All arithmetic is exact.
//!
//! Determinism contract:
//! * canonical modulus: first monic irreducible of degree n when coefficient
//!   tuples (c_0, ..., c_{n-1}) are ordered lexicographically;
//! * canonical element order: lexicographic from the highest coefficient
//!   down, so prime-subfield constants 0, 1, 2, ... come first;
//! * canonical square root: the smaller of the two roots in element order;
//! * canonical primitive m-th root of unity: the least element of exact
//!   order m in element order.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use smallvec::{smallvec, SmallVec};

use crate::numutil::{gcd, invmod, is_prime, mulmod, prime_factors};
use crate::{Error, Result};

/// Coefficient vector of an element, constant term first, always of length
/// n. Inline capacity 6 covers every extension degree the verification
/// sweeps touch without heap traffic.
pub type Coeffs = SmallVec<[u64; 6]>;

#[derive(Debug)]
struct FieldRepr {
    p: u64,
    n: usize,
    /// Monic modulus of degree n, constant term first, length n + 1.
    modulus: Vec<u64>,
    cardinality: u128,
}

/// A finite field F_{p^n}. Cheap to clone (shared representation).
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{{{}^{}}}", self.p(), self.degree())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.p() == other.p()
                && self.degree() == other.degree()
                && self.modulus() == other.modulus())
    }
}

impl Eq for Field {}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        Self::extension(p, 1)
    }

    /// F_{p^n} with the canonical modulus.
    pub fn extension(p: u64, n: usize) -> Result<Self> {
        let modulus = canonical_modulus(p, n)?;
        Self::with_modulus(p, modulus)
    }

    /// F_p[x]/(f) for an explicit monic irreducible f (constant term first,
    /// length = degree + 1).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if p < 5 {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            return Err(Error::CharTooSmall(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = modulus.len() - 1;
        assert!(n >= 1, "modulus must have positive degree");
        assert_eq!(modulus[n], 1, "modulus must be monic");
        assert!(modulus.iter().all(|&c| c < p), "modulus must be reduced mod p");
        if !poly_is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(p));
        }
        let cardinality = (p as u128).pow(n as u32);
        Ok(Field(Arc::new(FieldRepr { p, n, modulus, cardinality })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Extension degree n over the prime field.
    pub fn degree(&self) -> usize {
        self.0.n
    }

    pub fn cardinality(&self) -> u128 {
        self.0.cardinality
    }

    /// Modulus coefficients, constant term first, length n + 1.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), coeffs: smallvec![0; self.degree()] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> FieldElement {
        let mut coeffs: Coeffs = smallvec![0; self.degree()];
        coeffs[0] = c % self.p();
        FieldElement { field: self.clone(), coeffs }
    }

    pub fn from_int(&self, c: i64) -> FieldElement {
        self.from_u64(c.rem_euclid(self.p() as i64) as u64)
    }

    /// Element from explicit coefficients (constant first); shorter vectors
    /// are zero-padded, all entries reduced mod p.
    pub fn element(&self, coeffs: &[u64]) -> FieldElement {
        assert!(coeffs.len() <= self.degree(), "too many coefficients");
        let mut c: Coeffs = smallvec![0; self.degree()];
        for (i, &v) in coeffs.iter().enumerate() {
            c[i] = v % self.p();
        }
        FieldElement { field: self.clone(), coeffs: c }
    }

    /// The k-th element in canonical order, k in [0, p^n).
    pub fn element_from_index(&self, k: u128) -> FieldElement {
        debug_assert!(k < self.cardinality());
        let p = self.p() as u128;
        let mut coeffs: Coeffs = smallvec![0; self.degree()];
        let mut k = k;
        for c in coeffs.iter_mut() {
            *c = (k % p) as u64;
            k /= p;
        }
        FieldElement { field: self.clone(), coeffs }
    }

    /// All field elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.cardinality()).map(move |k| self.element_from_index(k))
    }

    /// Least element of exact multiplicative order m in canonical order.
    /// Requires m | p^n - 1.
    pub fn primitive_root_of_unity(&self, m: u64) -> Result<FieldElement> {
        let q1 = self.cardinality() - 1;
        if m == 0 || q1 % m as u128 != 0 {
            return Err(Error::NotCoprime { q: self.cardinality(), m });
        }
        if m == 1 {
            return Ok(self.one());
        }
        let exp = q1 / m as u128;
        let factors = prime_factors(m);
        // x -> x^((q-1)/m) maps F_q^x onto the unique subgroup of order m, so
        // scanning in canonical order finds a generator of that subgroup
        // quickly. The canonical answer is then the least element of the
        // full set {b^k : gcd(k, m) = 1} of exact-order-m elements.
        //
        // Prime-subfield constants occupy the first p indices, and any power
        // of one lies in F_p with order dividing p - 1; when m does not
        // divide p - 1 they cannot reach exact order m and the scan may
        // start past them.
        let start = if self.degree() > 1 && (self.p() - 1) % m != 0 {
            self.p() as u128
        } else {
            1
        };
        for k in start..self.cardinality() {
            let a = self.element_from_index(k);
            let b = a.pow(exp);
            if !has_exact_order(&b, m, &factors) {
                continue;
            }
            let mut best = b.clone();
            for k in 2..m {
                if gcd(k, m) == 1 {
                    let cand = b.pow(k as u128);
                    if cand < best {
                        best = cand;
                    }
                }
            }
            return Ok(best);
        }
        Err(Error::Internal(format!("no element of order {m} found")))
    }
}

fn has_exact_order(b: &FieldElement, m: u64, factors: &[u64]) -> bool {
    if !b.pow(m as u128).is_one() {
        return false;
    }
    factors.iter().all(|&ell| !b.pow((m / ell) as u128).is_one())
}

/// An element of a finite field; owns a handle to its field.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coeffs: Coeffs,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Coefficients over the prime field, constant term first, length n.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Position in canonical order.
    pub fn index(&self) -> u128 {
        let p = self.field.p() as u128;
        let mut k = 0u128;
        for &c in self.coeffs.iter().rev() {
            k = k * p + c as u128;
        }
        k
    }

    pub fn pow(&self, mut exp: u128) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.p();
        if self.field.degree() == 1 {
            let mut c = self.coeffs.clone();
            c[0] = invmod(c[0], p);
            return Ok(FieldElement { field: self.field.clone(), coeffs: c });
        }
        // Extended Euclid on (self, modulus) over F_p.
        let inv = poly_invmod(&self.coeffs, self.field.modulus(), p)
            .expect("nonzero element invertible modulo an irreducible");
        Ok(FieldElement { field: self.field.clone(), coeffs: inv })
    }

    /// Quadratic character: 1 for nonzero squares, -1 for non-squares, 0 for
    /// zero. Computed as self^((q-1)/2).
    pub fn quadratic_character(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let e = self.pow((self.field.cardinality() - 1) / 2);
        if e.is_one() {
            1
        } else {
            debug_assert!((&e + &self.field.one()).is_zero());
            -1
        }
    }

    /// Canonical square root (the smaller of the two in element order), via
    /// Tonelli-Shanks on F_q. Errors with NonResidue when no root exists.
    pub fn sqrt(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        match self.quadratic_character() {
            1 => {}
            _ => return Err(Error::NonResidue),
        }
        let q = self.field.cardinality();
        let mut t = q - 1;
        let mut s = 0u32;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let r = if s == 1 {
            // q = 3 mod 4
            self.pow((q + 1) / 4)
        } else {
            // First quadratic non-residue in canonical order seeds the loop.
            let z = self
                .field
                .elements()
                .find(|a| a.quadratic_character() == -1)
                .expect("non-squares exist in every finite field of odd order");
            let mut m = s;
            let mut c = z.pow(t);
            let mut u = self.pow(t);
            let mut r = self.pow((t + 1) / 2);
            while !u.is_one() {
                let mut i = 0u32;
                let mut probe = u.clone();
                while !probe.is_one() {
                    probe = &probe * &probe;
                    i += 1;
                    debug_assert!(i < m, "Tonelli-Shanks probe escaped the 2-group");
                }
                let mut b = c.clone();
                for _ in 0..(m - i - 1) {
                    b = &b * &b;
                }
                m = i;
                c = &b * &b;
                u = &u * &c;
                r = &r * &b;
            }
            r
        };
        debug_assert!((&r * &r) == *self);
        let neg = -&r;
        Ok(if neg < r { neg } else { r })
    }

    /// Multiply by a prime-subfield constant.
    pub fn scale(&self, c: u64) -> FieldElement {
        let p = self.field.p();
        let c = c % p;
        let coeffs = self.coeffs.iter().map(|&a| mulmod(a, c, p)).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

/// Invert every entry of a slice at the cost of one field inversion via the
/// prefix-product trick. Errors with DivisionByZero when any entry is zero.
pub(crate) fn batch_inverse(elems: &[FieldElement]) -> Result<Vec<FieldElement>> {
    if elems.is_empty() {
        return Ok(Vec::new());
    }
    let mut prefix = Vec::with_capacity(elems.len());
    let mut acc = elems[0].clone();
    prefix.push(acc.clone());
    for e in &elems[1..] {
        acc = &acc * e;
        prefix.push(acc.clone());
    }
    let mut tail = prefix.last().expect("nonempty").inverse()?;
    let mut out = vec![elems[0].field().zero(); elems.len()];
    for i in (1..elems.len()).rev() {
        out[i] = &tail * &prefix[i - 1];
        tail = &tail * &elems[i];
    }
    out[0] = tail;
    Ok(out)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Canonical element order: lexicographic from the highest coefficient down.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert!(self.field == other.field);
        self.coeffs.iter().rev().cmp(other.coeffs.iter().rev())
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.coeffs[..])
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        debug_assert!(self.field == rhs.field, "elements of different fields");
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(rhs.coeffs.iter())
            .map(|(&a, &b)| {
                let s = a + b;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        debug_assert!(self.field == rhs.field, "elements of different fields");
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(rhs.coeffs.iter())
            .map(|(&a, &b)| if a >= b { a - b } else { a + p - b })
            .collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.field.p();
        let coeffs = self.coeffs.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        debug_assert!(self.field == rhs.field, "elements of different fields");
        let p = self.field.p();
        let n = self.field.degree();
        if n == 1 {
            return FieldElement {
                field: self.field.clone(),
                coeffs: smallvec![mulmod(self.coeffs[0], rhs.coeffs[0], p)],
            };
        }
        let mut buf: SmallVec<[u64; 11]> = smallvec![0; 2 * n - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                buf[i + j] = (buf[i + j] + mulmod(a, b, p)) % p;
            }
        }
        let modulus = self.field.modulus();
        for i in (n..2 * n - 1).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for j in 0..n {
                let sub = mulmod(c, modulus[j], p);
                let idx = i - n + j;
                buf[idx] = if buf[idx] >= sub { buf[idx] - sub } else { buf[idx] + p - sub };
            }
        }
        buf.truncate(n);
        FieldElement { field: self.field.clone(), coeffs: Coeffs::from_slice(&buf) }
    }
}

/// Least d >= 1 with q^d = 1 mod m: the degree of the extension of F_q where
/// the m-th roots of unity live. Errors when gcd(q, m) > 1.
pub fn min_ext_degree(q: u128, m: u64) -> Result<u32> {
    if m == 0 || gcd((q % m as u128) as u64, m) != 1 {
        return Err(Error::NotCoprime { q, m });
    }
    if m == 1 {
        return Ok(1);
    }
    let mut acc = (q % m as u128) as u64;
    for d in 1.. {
        if acc == 1 {
            return Ok(d);
        }
        acc = mulmod(acc, (q % m as u128) as u64, m);
    }
    unreachable!("q mod m is a unit, so some power is 1")
}

/// The canonical embedding of F_{p^e} into F_{p^{ef}}: the source generator
/// is sent to the canonically smallest root of the source modulus in the
/// target field.
pub struct Embedding {
    src: Field,
    dst: Field,
    /// Images of 1, x, x^2, ..., x^{e-1}.
    root_powers: Vec<FieldElement>,
}

impl Embedding {
    pub fn new(src: &Field, dst: &Field) -> Result<Self> {
        if src.p() != dst.p() || dst.degree() % src.degree() != 0 {
            return Err(Error::NoEmbedding);
        }
        if src.degree() == 1 {
            return Ok(Embedding {
                src: src.clone(),
                dst: dst.clone(),
                root_powers: vec![dst.one()],
            });
        }
        if src == dst {
            let root = dst.element(&[0, 1]);
            let root_powers =
                (0..src.degree()).map(|i| root.pow(i as u128)).collect();
            return Ok(Embedding { src: src.clone(), dst: dst.clone(), root_powers });
        }
        // Exhaustive scan in canonical order; target fields stay desk-size.
        let modulus = src.modulus();
        let root = dst
            .elements()
            .find(|a| eval_poly_in(modulus, a).is_zero())
            .ok_or(Error::NoEmbedding)?;
        let root_powers = (0..src.degree()).map(|i| root.pow(i as u128)).collect();
        Ok(Embedding { src: src.clone(), dst: dst.clone(), root_powers })
    }

    pub fn source(&self) -> &Field {
        &self.src
    }

    pub fn target(&self) -> &Field {
        &self.dst
    }

    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        debug_assert!(*a.field() == self.src);
        if self.src.degree() == 1 {
            return self.dst.from_u64(a.coeffs()[0]);
        }
        let mut acc = self.dst.zero();
        for (c, rp) in a.coeffs().iter().zip(self.root_powers.iter()) {
            if *c != 0 {
                acc = &acc + &rp.scale(*c);
            }
        }
        acc
    }

    /// Preimage under the embedding: solves the F_p-linear system given by
    /// the root powers. Errors when the element is outside the embedded
    /// subfield.
    pub fn section(&self, t: &FieldElement) -> Result<FieldElement> {
        debug_assert!(*t.field() == self.dst);
        let e = self.src.degree();
        let nd = self.dst.degree();
        let p = self.src.p();
        if e == 1 {
            if t.coeffs()[1..].iter().any(|&c| c != 0) {
                return Err(Error::NotInSubfield);
            }
            return Ok(self.src.from_u64(t.coeffs()[0]));
        }
        // Augmented matrix [root_powers | t], one row per target coordinate.
        let mut rows: Vec<Vec<u64>> = (0..nd)
            .map(|r| {
                let mut row: Vec<u64> =
                    self.root_powers.iter().map(|rp| rp.coeffs()[r]).collect();
                row.push(t.coeffs()[r]);
                row
            })
            .collect();
        let mut pivot_of_col = vec![usize::MAX; e];
        let mut rank = 0usize;
        for col in 0..e {
            let Some(pr) = (rank..nd).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pr);
            let inv = invmod(rows[rank][col], p);
            for v in rows[rank].iter_mut() {
                *v = mulmod(*v, inv, p);
            }
            for r in 0..nd {
                if r != rank && rows[r][col] != 0 {
                    let f = rows[r][col];
                    for c in col..=e {
                        let sub = mulmod(f, rows[rank][c], p);
                        rows[r][c] =
                            if rows[r][c] >= sub { rows[r][c] - sub } else { rows[r][c] + p - sub };
                    }
                }
            }
            pivot_of_col[col] = rank;
            rank += 1;
        }
        // The root powers are linearly independent, so every column pivots.
        debug_assert_eq!(rank, e);
        for r in rank..nd {
            if rows[r][e] != 0 {
                return Err(Error::NotInSubfield);
            }
        }
        let coeffs: Vec<u64> = (0..e).map(|col| rows[pivot_of_col[col]][e]).collect();
        let a = self.src.element(&coeffs);
        debug_assert!(self.apply(&a) == *t);
        Ok(a)
    }
}

/// Evaluate a prime-subfield polynomial (constant first) at a point of an
/// arbitrary extension.
fn eval_poly_in(coeffs: &[u64], at: &FieldElement) -> FieldElement {
    let mut acc = at.field().zero();
    for &c in coeffs.iter().rev() {
        acc = &acc * at;
        acc = &acc + &at.field().from_u64(c);
    }
    acc
}

// ---- dense polynomial arithmetic over F_p (construction-time only) ----

fn poly_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of a modulo monic f.
fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let df = f.len() - 1;
    while r.len() > df {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - df;
        if c != 0 {
            for j in 0..=df {
                let sub = mulmod(c, f[j], p);
                let idx = shift + j;
                r[idx] = if r[idx] >= sub { r[idx] - sub } else { r[idx] + p - sub };
            }
        }
        r.pop();
        poly_trim(&mut r);
        if r.len() > df && *r.last().unwrap() == 0 {
            poly_trim(&mut r);
        }
    }
    r
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !poly_is_zero(&b) {
        // Make b monic before reducing.
        let lead = *b.last().unwrap();
        if lead != 1 {
            let inv = invmod(lead, p);
            for c in b.iter_mut() {
                *c = mulmod(*c, inv, p);
            }
        }
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
        poly_trim(&mut b);
    }
    poly_trim(&mut a);
    a
}

/// x^exp mod monic f.
fn poly_xpow(mut exp: u128, f: &[u64], p: u64) -> Vec<u64> {
    let mut base = poly_rem(&[0, 1], f, p);
    let mut acc = vec![1u64];
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &base, p), f, p);
        }
        base = poly_rem(&poly_mul(&base, &base, p), f, p);
        exp >>= 1;
    }
    acc
}

/// Irreducibility over F_p: x^{p^n} = x mod f, and gcd(x^{p^{n/l}} - x, f)
/// trivial for every prime l | n.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    if f[0] == 0 {
        return false; // x divides
    }
    for ell in prime_factors(n as u64) {
        let k = n as u64 / ell;
        let mut g = poly_xpow((p as u128).pow(k as u32), f, p);
        // g - x
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = if g[1] >= 1 { g[1] - 1 } else { p - 1 };
        poly_trim(&mut g);
        let d = poly_gcd(f, &g, p);
        if d.len() > 1 {
            return false;
        }
    }
    let xq = poly_xpow((p as u128).pow(n as u32), f, p);
    let mut want = vec![0u64, 1];
    poly_trim(&mut want);
    let mut got = xq;
    poly_trim(&mut got);
    got == want
}

/// Inverse of a modulo monic irreducible f, both constant-first; returns a
/// length-(deg f) coefficient vector.
fn poly_invmod(a: &[u64], f: &[u64], p: u64) -> Option<Coeffs> {
    let n = f.len() - 1;
    let mut r0: Vec<u64> = f.to_vec();
    let mut r1: Vec<u64> = a.to_vec();
    poly_trim(&mut r1);
    let mut s0: Vec<u64> = vec![0];
    let mut s1: Vec<u64> = vec![1];
    while !poly_is_zero(&r1) {
        // Divide r0 by r1: quotient accumulation.
        let lead_inv = invmod(*r1.last().unwrap(), p);
        let mut q = vec![0u64; r0.len().saturating_sub(r1.len()) + 1];
        let mut rem = r0.clone();
        while rem.len() >= r1.len() && !poly_is_zero(&rem) {
            let c = mulmod(*rem.last().unwrap(), lead_inv, p);
            let shift = rem.len() - r1.len();
            if c != 0 {
                q[shift] = (q[shift] + c) % p;
                for (j, &fc) in r1.iter().enumerate() {
                    let sub = mulmod(c, fc, p);
                    let idx = shift + j;
                    rem[idx] = if rem[idx] >= sub { rem[idx] - sub } else { rem[idx] + p - sub };
                }
            }
            rem.pop();
            poly_trim(&mut rem);
            if rem.len() == 1 && rem[0] == 0 {
                break;
            }
        }
        poly_trim(&mut q);
        // (r0, r1) <- (r1, r0 - q r1) and same for s.
        let qs1 = poly_mul(&q, &s1, p);
        let new_s = poly_sub(&s0, &qs1, p);
        r0 = r1;
        r1 = rem;
        poly_trim(&mut r1);
        s0 = s1;
        s1 = new_s;
        if r1.len() == 1 && r1[0] == 0 {
            r1 = vec![0];
        }
    }
    // r0 = gcd; must be a nonzero constant.
    poly_trim(&mut r0);
    if r0.len() != 1 || r0[0] == 0 {
        return None;
    }
    let scale = invmod(r0[0], p);
    let mut out: Coeffs = smallvec![0; n];
    for (i, &c) in s0.iter().enumerate() {
        if i < n {
            out[i] = mulmod(c, scale, p);
        }
    }
    Some(out)
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out = vec![0u64; len];
    for i in 0..len {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = if x >= y { x - y } else { x + p - y };
    }
    poly_trim(&mut out);
    out
}

/// First monic irreducible of degree n in lexicographic coefficient order
/// (c_0 compared first, highest-degree coefficient written last).
fn canonical_modulus(p: u64, n: usize) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::CharTooSmall(p));
    }
    if n == 1 {
        return Ok(vec![0, 1]); // f = x; F_p[x]/(x) = F_p
    }
    let total = (p as u128).pow(n as u32);
    // Candidates with c_0 = 0 are divisible by x; the scan can start at the
    // first tuple with c_0 = 1 without changing which polynomial is found.
    for idx in (p as u128).pow(n as u32 - 1)..total {
        // c_0 is the most significant digit of idx, c_{n-1} the least.
        let mut digits = vec![0u64; n];
        let mut k = idx;
        for d in digits.iter_mut().rev() {
            *d = (k % p as u128) as u64;
            k /= p as u128;
        }
        let mut f = digits;
        f.push(1);
        if poly_is_irreducible(&f, p) {
            return Ok(f);
        }
    }
    unreachable!("monic irreducibles of every degree exist over F_p")
}
