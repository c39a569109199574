//! Per-instance report records for sweeps, their JSON-lines and CSV
//! renderings, and a parallel map that preserves input order so output
//! bytes never depend on scheduling.

use crate::charsum::CharacterContext;
use crate::classnum::{class_number, dirichlet_sum, mr_two_isogeny_sum, power_residue_sum, Rational};
use crate::families::{family_closed_form, FamilyInstance};
use crate::ff::FieldElement;
use crate::formal::isogeny_normalization;
use crate::velu::{verify_exact_sequence, verify_frobenius_factorization, Isogeny};
use crate::weierstrass::Point;
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

fn coeffs(e: &FieldElement) -> Vec<u64> {
    e.coeffs().to_vec()
}

/// One theorem check: the three forms of S_P at a single instance.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremLine {
    pub p: u64,
    pub m: u64,
    pub family: String,
    pub curve: [Vec<u64>; 5],
    pub alpha: Option<Vec<u64>>,
    pub beta: Option<Vec<u64>>,
    pub d: usize,
    pub brute: Vec<u64>,
    pub compact: Vec<u64>,
    /// Absent when no closed lambda-form is catalogued for this degree.
    pub lambda: Option<Vec<u64>>,
    pub equal: bool,
}

fn curve_coeffs(phi: &Isogeny) -> [Vec<u64>; 5] {
    let a = phi.domain().a();
    std::array::from_fn(|i| coeffs(&a[i]))
}

/// Evaluate the theorem forms for an arbitrary generator of exact order m.
pub fn theorem_line_for_generator(
    family: &str,
    alpha: Option<&FieldElement>,
    beta: Option<&FieldElement>,
    generator: &Point,
    m: u64,
) -> Result<TheoremLine> {
    let phi = Isogeny::from_kernel(generator, m)?;
    let ctx = CharacterContext::new(&phi)?;
    let brute = ctx.charsum_bruteforce()?;
    let compact = ctx.charsum_compact()?;
    let lambda = match ctx.charsum_lambda() {
        Ok(v) => Some(v),
        Err(Error::UnsupportedM(_)) => None,
        Err(e) => return Err(e),
    };
    let equal = brute == compact && lambda.as_ref().map_or(true, |l| *l == brute);
    Ok(TheoremLine {
        p: generator.curve().field().p(),
        m,
        family: family.to_string(),
        curve: curve_coeffs(&phi),
        alpha: alpha.map(coeffs),
        beta: beta.map(coeffs),
        d: ctx.ext_degree(),
        brute: coeffs(&brute),
        compact: coeffs(&compact),
        lambda: lambda.as_ref().map(coeffs),
        equal,
    })
}

pub fn theorem_line(inst: &FamilyInstance) -> Result<TheoremLine> {
    theorem_line_for_generator(
        inst.family.label(),
        Some(&inst.alpha),
        Some(&inst.beta),
        &inst.generator,
        inst.m,
    )
}

/// One family check: brute force, collapsed sum, and the row's closed form.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyLine {
    pub p: u64,
    pub m: u64,
    pub family: String,
    pub alpha: Vec<u64>,
    pub beta: Vec<u64>,
    pub d: usize,
    pub brute: Vec<u64>,
    pub compact: Vec<u64>,
    pub closed: Vec<u64>,
    pub equal: bool,
}

pub fn family_line(inst: &FamilyInstance) -> Result<FamilyLine> {
    let phi = Isogeny::from_kernel(&inst.generator, inst.m)?;
    let ctx = CharacterContext::new(&phi)?;
    let brute = ctx.charsum_bruteforce()?;
    let compact = ctx.charsum_compact()?;
    let closed = family_closed_form(inst, ctx.zeta())?;
    let equal = brute == compact && brute == closed;
    Ok(FamilyLine {
        p: inst.curve.field().p(),
        m: inst.m,
        family: inst.family.label().to_string(),
        alpha: coeffs(&inst.alpha),
        beta: coeffs(&inst.beta),
        d: ctx.ext_degree(),
        brute: coeffs(&brute),
        compact: coeffs(&compact),
        closed: coeffs(&closed),
        equal,
    })
}

/// One structural check: exact sequence, Frobenius factorization, and
/// normalization constants of the isogeny and its complement.
#[derive(Clone, Debug, Serialize)]
pub struct StructureLine {
    pub p: u64,
    pub m: u64,
    pub family: String,
    pub alpha: Option<Vec<u64>>,
    /// #E_1(F_q) and #E_2(F_q); isogenous curves match point counts.
    pub n1: usize,
    pub n2: usize,
    pub exact: bool,
    /// Degree of the extension the factorization was checked over.
    pub ext: u32,
    pub frobenius: bool,
    pub c_velu: Vec<u64>,
    pub c_complement: Vec<u64>,
    pub pass: bool,
}

pub fn structure_line(
    family: &str,
    alpha: Option<&FieldElement>,
    generator: &Point,
    m: u64,
    ext: u32,
    precision: usize,
) -> Result<StructureLine> {
    let phi = Isogeny::from_kernel(generator, m)?;
    let comp = phi.complement()?;
    let report = verify_exact_sequence(&phi, &comp)?;
    let exact = report.all_pass(m);
    let frobenius = verify_frobenius_factorization(&phi, &comp, ext)?;
    let c_velu = isogeny_normalization(&phi, precision)?.c;
    let c_complement = isogeny_normalization(&comp, precision)?.c;
    let one = phi.domain().field().one();
    let pass = exact && frobenius && c_velu == one && c_complement == one;
    Ok(StructureLine {
        p: generator.curve().field().p(),
        m,
        family: family.to_string(),
        alpha: alpha.map(coeffs),
        n1: report.e1_count,
        n2: report.e2_count,
        exact,
        ext,
        frobenius,
        c_velu: coeffs(&c_velu),
        c_complement: coeffs(&c_complement),
        pass,
    })
}

/// Single-instance character sum report.
#[derive(Clone, Debug, Serialize)]
pub struct CharsumLine {
    pub m: u64,
    pub zeta: Vec<u64>,
    pub d: usize,
    pub brute: Vec<u64>,
    pub compact: Vec<u64>,
    pub lambda: Option<Vec<u64>>,
    pub equal: bool,
}

pub fn charsum_line(ctx: &CharacterContext) -> Result<CharsumLine> {
    let brute = ctx.charsum_bruteforce()?;
    let compact = ctx.charsum_compact()?;
    let lambda = match ctx.charsum_lambda() {
        Ok(v) => Some(v),
        Err(Error::UnsupportedM(_)) => None,
        Err(e) => return Err(e),
    };
    let equal = brute == compact && lambda.as_ref().map_or(true, |l| *l == brute);
    Ok(CharsumLine {
        m: ctx.m(),
        zeta: coeffs(ctx.zeta()),
        d: ctx.ext_degree(),
        brute: coeffs(&brute),
        compact: coeffs(&compact),
        lambda: lambda.as_ref().map(coeffs),
        equal,
    })
}

/// Normalization constant of an isogeny's formal pullback.
#[derive(Clone, Debug, Serialize)]
pub struct NormalizationLine {
    pub c: Vec<u64>,
    pub precision: usize,
}

pub fn normalization_line(phi: &Isogeny, precision: usize) -> Result<NormalizationLine> {
    let ratio = isogeny_normalization(phi, precision)?;
    Ok(NormalizationLine { c: coeffs(&ratio.c), precision: ratio.residual_precision })
}

/// One prime's worth of the weighted Legendre sum or the two-isogeny sum.
#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub p: u64,
    pub s: i64,
    /// s / (-p), exact; rendered in lowest terms.
    pub quotient: String,
    pub h_star: u64,
    pub defect: String,
    pub pass: bool,
}

fn class_row(p: u64, s: i64, quotient: Rational, h_star: u64, defect: Rational, pass: bool) -> ClassRow {
    ClassRow { p, s, quotient: quotient.to_string(), h_star, defect: defect.to_string(), pass }
}

pub fn dirichlet_row(p: u64) -> Result<ClassRow> {
    let data = class_number(p)?;
    let s = dirichlet_sum(p)?;
    let quotient = Rational::new(s, -(p as i64));
    let defect = Rational::new((-s - p as i64 * data.h_star as i64).abs(), p as i64);
    let pass = s == -(p as i64) * data.h_star as i64;
    Ok(class_row(p, s, quotient, data.h_star, defect, pass))
}

pub fn mr_row(a: i64, b: i64, p: u64) -> Result<ClassRow> {
    let r = mr_two_isogeny_sum(a, b, p)?;
    let pass = r.quotient.is_integer();
    Ok(class_row(p, r.s, r.quotient, r.h_star, r.defect, pass))
}

/// One (p, m) power residue sum as an element of Z[zeta_m].
#[derive(Clone, Debug, Serialize)]
pub struct PowerRow {
    pub p: u64,
    pub m: u64,
    pub coeffs: Vec<i64>,
    pub zero: bool,
}

pub fn power_row(p: u64, m: u64) -> Result<PowerRow> {
    let z = power_residue_sum(p, m)?;
    let zero = z.is_zero();
    Ok(PowerRow { p, m, coeffs: z.coeffs().to_vec(), zero })
}

/// Trailing summary object, emitted as {"summary": {...}}.
#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub command: String,
    pub instances: usize,
    pub failures: usize,
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    summary: &'a Summary,
}

pub fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report records serialize infallibly")
}

pub fn summary_line(summary: &Summary) -> String {
    json_line(&SummaryLine { summary })
}

/// CSV rendering for the row kinds the class-number commands emit.
pub trait CsvRecord {
    fn csv_header() -> &'static str;
    fn csv_row(&self) -> String;
}

impl CsvRecord for ClassRow {
    fn csv_header() -> &'static str {
        "p,S,quotient,h_star,defect"
    }

    fn csv_row(&self) -> String {
        format!("{},{},{},{},{}", self.p, self.s, self.quotient, self.h_star, self.defect)
    }
}

impl CsvRecord for PowerRow {
    fn csv_header() -> &'static str {
        "p,m,coeffs,zero"
    }

    fn csv_row(&self) -> String {
        let joined = self
            .coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(";");
        format!("{},{},{},{}", self.p, self.m, joined, self.zero)
    }
}

/// Map a worklist in parallel while keeping results in input order.
/// `jobs` = 0 uses the global pool; 1 stays sequential.
pub fn ordered_par_map<T, U, F>(jobs: usize, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    if jobs == 1 || items.len() <= 1 {
        return items.into_iter().map(f).collect();
    }
    let run = || items.into_par_iter().map(&f).collect();
    match jobs {
        0 => run(),
        n => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("worker pool construction")
            .install(run),
    }
}
