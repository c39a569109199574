//! Parametrized curve families with a marked torsion point, their closed
//! form character sums, and deterministic corpus generation for sweeps.
//!
//! Most rows use the two-parameter normal form
//!
//!   E(beta, gamma): y^2 + (1 - gamma)xy - beta y = x^3 - beta x^2
//!
//! with P = (0,0), on which 2P = (beta, beta*gamma) and 3P =
//! (gamma, beta - gamma) whenever those multiples are affine. Degrees 2
//! and 3 use their own two-parameter shapes, and degree 4 has a second,
//! complete-square model with P = (alpha, alpha).

use crate::charsum::has_exact_order;
use crate::ff::{Embedding, Field, FieldElement};
use crate::numutil::gcd;
use crate::weierstrass::{Curve, Point};
use crate::{Error, Result};

/// Default cap on valid (alpha, beta) pairs per prime for the
/// two-parameter rows.
pub const DEFAULT_PAIR_CAP: usize = 50;

/// The catalogued rows. Degree 4 appears twice: the normal-form row and
/// the complete-square model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    M2,
    M3,
    M4,
    M4Alt,
    M5,
    M6,
    M8,
    M10,
}

impl FamilyId {
    pub const ALL: [FamilyId; 8] = [
        FamilyId::M2,
        FamilyId::M3,
        FamilyId::M4,
        FamilyId::M4Alt,
        FamilyId::M5,
        FamilyId::M6,
        FamilyId::M8,
        FamilyId::M10,
    ];

    /// Rows providing the given kernel degree (two for degree 4).
    pub fn for_degree(m: u64) -> &'static [FamilyId] {
        match m {
            2 => &[FamilyId::M2],
            3 => &[FamilyId::M3],
            4 => &[FamilyId::M4, FamilyId::M4Alt],
            5 => &[FamilyId::M5],
            6 => &[FamilyId::M6],
            8 => &[FamilyId::M8],
            10 => &[FamilyId::M10],
            _ => &[],
        }
    }

    pub fn degree(self) -> u64 {
        match self {
            FamilyId::M2 => 2,
            FamilyId::M3 => 3,
            FamilyId::M4 | FamilyId::M4Alt => 4,
            FamilyId::M5 => 5,
            FamilyId::M6 => 6,
            FamilyId::M8 => 8,
            FamilyId::M10 => 10,
        }
    }

    /// Number of free parameters (the rest are derived).
    pub fn param_count(self) -> usize {
        match self {
            FamilyId::M2 | FamilyId::M3 => 2,
            _ => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            FamilyId::M2 => "m2",
            FamilyId::M3 => "m3",
            FamilyId::M4 => "m4",
            FamilyId::M4Alt => "m4alt",
            FamilyId::M5 => "m5",
            FamilyId::M6 => "m6",
            FamilyId::M8 => "m8",
            FamilyId::M10 => "m10",
        }
    }
}

/// One specialized family member: the curve, the marked point of exact
/// order m, and the parameters the closed form is evaluated at.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub family: FamilyId,
    pub m: u64,
    pub alpha: FieldElement,
    /// Second free parameter for the two-parameter rows, derived otherwise.
    pub beta: FieldElement,
    /// Derived shift parameter; zero where the row does not use one.
    pub gamma: FieldElement,
    pub curve: Curve,
    pub generator: Point,
}

/// The normal-form curve y^2 + (1-gamma)xy - beta y = x^3 - beta x^2.
pub fn kubert_curve(field: &Field, beta: &FieldElement, gamma: &FieldElement) -> Result<Curve> {
    let one = field.one();
    Curve::new(
        field,
        [&one - gamma, -beta, -beta, field.zero(), field.zero()],
    )
}

/// Specialize a family row at the given parameters (alpha, then beta for
/// the two-parameter rows). Errors with SingularCurve or WrongOrder for
/// degenerate specializations; corpus generation skips those silently.
pub fn family_instance(
    family: FamilyId,
    field: &Field,
    params: &[FieldElement],
) -> Result<FamilyInstance> {
    assert_eq!(params.len(), family.param_count(), "parameter count for {family:?}");
    let zero = field.zero();
    let one = field.one();
    let alpha = params[0].clone();
    let (beta, gamma, curve, generator) = match family {
        FamilyId::M2 => {
            // y^2 = x(x^2 + alpha x + beta)
            let beta = params[1].clone();
            let curve = Curve::new(
                field,
                [zero.clone(), alpha.clone(), zero.clone(), beta.clone(), zero.clone()],
            )?;
            let p0 = curve.point(zero.clone(), zero.clone())?;
            (beta, zero.clone(), curve, p0)
        }
        FamilyId::M3 => {
            // y^2 + alpha xy + beta y = x^3
            let beta = params[1].clone();
            let curve = Curve::new(
                field,
                [alpha.clone(), zero.clone(), beta.clone(), zero.clone(), zero.clone()],
            )?;
            let p0 = curve.point(zero.clone(), zero.clone())?;
            (beta, zero.clone(), curve, p0)
        }
        FamilyId::M4 => {
            let curve = kubert_curve(field, &alpha, &zero)?;
            let p0 = curve.point(zero.clone(), zero.clone())?;
            (alpha.clone(), zero.clone(), curve, p0)
        }
        FamilyId::M4Alt => {
            // y^2 = x^3 + (1 - 2 alpha) x^2 + alpha^2 x
            let two = field.from_u64(2);
            let a2 = &one - &(&two * &alpha);
            let curve = Curve::new(
                field,
                [zero.clone(), a2, zero.clone(), &alpha * &alpha, zero.clone()],
            )?;
            let p0 = curve.point(alpha.clone(), alpha.clone())?;
            (alpha.clone(), zero.clone(), curve, p0)
        }
        FamilyId::M5 => {
            let curve = kubert_curve(field, &alpha, &alpha)?;
            let p0 = curve.point(zero.clone(), zero.clone())?;
            (alpha.clone(), alpha.clone(), curve, p0)
        }
        FamilyId::M6 => {
            let beta = &alpha + &(&alpha * &alpha);
            let curve = kubert_curve(field, &beta, &alpha)?;
            let p0 = curve.point(zero.clone(), zero.clone())?;
            (beta, alpha.clone(), curve, p0)
        }
        FamilyId::M8 => {
            // beta = (2 alpha - 1)(alpha - 1), gamma = beta / alpha
            let two = field.from_u64(2);
            let beta = &(&(&two * &alpha) - &one) * &(&alpha - &one);
            let gamma = &beta * &alpha.inverse()?;
            let curve = kubert_curve(field, &beta, &gamma)?;
            let p0 = curve.point(zero.clone(), zero.clone())?;
            (beta, gamma, curve, p0)
        }
        FamilyId::M10 => {
            // delta = alpha(alpha - 1) - 1, gamma = alpha(delta - 1),
            // beta = gamma delta
            let delta = &(&alpha * &(&alpha - &one)) - &one;
            let gamma = &alpha * &(&delta - &one);
            let beta = &gamma * &delta;
            let curve = kubert_curve(field, &beta, &gamma)?;
            let p0 = curve.point(zero.clone(), zero.clone())?;
            (beta, gamma, curve, p0)
        }
    };
    let m = family.degree();
    if !generator.has_order(m) {
        return Err(Error::WrongOrder);
    }
    Ok(FamilyInstance { family, m, alpha, beta, gamma, curve, generator })
}

/// Evaluate the row's closed form at the instance parameters, with
/// lambda_i = zeta^i + zeta^{-i} for the given primitive m-th root of
/// unity. The result lives in zeta's field.
pub fn family_closed_form(inst: &FamilyInstance, zeta: &FieldElement) -> Result<FieldElement> {
    debug_assert!(has_exact_order(zeta, inst.m), "zeta must have exact order m");
    let ext = zeta.field();
    let emb = Embedding::new(inst.curve.field(), ext)?;
    let a = emb.apply(&inst.alpha);
    let m = inst.m;
    let lam = |i: u64| &zeta.pow(i as u128) + &zeta.pow((m - i % m) as u128 % m as u128);
    let c = |v: u64| ext.from_u64(v);
    let value = match inst.family {
        FamilyId::M2 | FamilyId::M3 | FamilyId::M4Alt => ext.zero(),
        FamilyId::M4 => -&a,
        FamilyId::M5 => &lam(2) * &a,
        FamilyId::M6 => -&(&a * &(&a + &c(2))),
        FamilyId::M8 => {
            let l1 = lam(1);
            let inner = &(&(&a * &a) + &(&(&c(2) * &l1) * &a)) - &l1;
            -&(&(&a.inverse()? * &(&a - &ext.one())) * &inner)
        }
        FamilyId::M10 => {
            let l2 = lam(2);
            let pow = |k: u32| {
                let mut acc = ext.one();
                for _ in 0..k {
                    acc = &acc * &a;
                }
                acc
            };
            let t5 = &l2 * &pow(5);
            let t4 = &(&(&c(3) * &l2) + &c(2)) * &pow(4);
            let t3 = &(&l2 - &c(4)) * &pow(3);
            let t2 = &(&(&c(6) * &l2) + &c(2)) * &pow(2);
            let t1 = &(&l2 - &c(4)) * &a;
            let t0 = &(&c(2) * &l2) + &c(2);
            &(&(&(&(&t5 - &t4) - &t3) + &t2) + &t1) - &t0
        }
    };
    Ok(value)
}

/// All valid family instances for primes in [p_lo, p_hi] and the given
/// degrees, in a deterministic order: primes ascending, degrees ascending,
/// rows in catalogue order, then parameters in field order. Degenerate
/// specializations (singular or wrong torsion order) are skipped, as are
/// (p, m) pairs with gcd(p, m) > 1. Two-parameter rows stop after
/// `pair_cap` valid instances per prime.
pub fn corpus_generate(
    p_lo: u64,
    p_hi: u64,
    m_list: &[u64],
    pair_cap: usize,
) -> Vec<FamilyInstance> {
    let mut degrees: Vec<u64> = m_list.to_vec();
    degrees.sort_unstable();
    degrees.dedup();
    let mut out = Vec::new();
    for p in crate::numutil::primes_in(p_lo.max(5), p_hi) {
        let Ok(field) = Field::prime(p) else { continue };
        for &m in &degrees {
            if gcd(p, m) != 1 {
                continue;
            }
            for &family in FamilyId::for_degree(m) {
                if family.param_count() == 1 {
                    for a in 0..p {
                        let alpha = field.from_u64(a);
                        if let Ok(inst) = family_instance(family, &field, &[alpha]) {
                            out.push(inst);
                        }
                    }
                } else {
                    let mut taken = 0usize;
                    'grid: for a in 0..p {
                        for b in 0..p {
                            if taken >= pair_cap {
                                break 'grid;
                            }
                            let params = [field.from_u64(a), field.from_u64(b)];
                            if let Ok(inst) = family_instance(family, &field, &params) {
                                out.push(inst);
                                taken += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Deterministic search for curves with a rational point of exact order m
/// outside the catalogued rows: scans the (beta, gamma) normal-form grid
/// and returns up to `cap` marked points (0,0) of exact order m.
pub fn search_torsion_instances(field: &Field, m: u64, cap: usize) -> Vec<Point> {
    let p = field.cardinality();
    let mut found = Vec::new();
    if gcd(field.p(), m) != 1 || cap == 0 {
        return found;
    }
    let mut idx_b = 1u128;
    while idx_b < p {
        let beta = field.element_from_index(idx_b);
        let mut idx_g = 0u128;
        while idx_g < p {
            let gamma = field.element_from_index(idx_g);
            if let Ok(curve) = kubert_curve(field, &beta, &gamma) {
                let p0 = curve
                    .point(field.zero(), field.zero())
                    .expect("(0,0) lies on every normal-form curve");
                if p0.has_order(m) {
                    found.push(p0);
                    if found.len() >= cap {
                        return found;
                    }
                }
            }
            idx_g += 1;
        }
        idx_b += 1;
    }
    found
}
