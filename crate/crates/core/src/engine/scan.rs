//! Catalogs of realized GR measures.
//!
//! Exhaustive mode enumerates matrix tuples up to the action of
//! `GL(d1) × GL(d2)`: the first arrow is brought to rank normal form
//! `[I_r 0; 0 0]` and the remaining arrows range freely. Isomorphism classes
//! are counted exactly by Burnside's lemma: the number of classes in an
//! invariant set `S` of tuples is `Σ_{T ∈ S} |Aut T| / |G|`, and every tuple
//! whose first arrow has rank `r` is conjugate to one in normal form, each
//! normal-form fiber standing for `N_r` tuples (`N_r` = number of rank-`r`
//! matrices).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ar::{classify_position, preinjective_dims, preprojective_dims, tau_dim, tau_inv_dim, DimVector, Position};
use crate::config::Caps;
use std::cell::RefCell;

use crate::engine::measure::{gr_measure, Lattice, MeasureCache};
use crate::error::{Error, Result};
use crate::kronecker::{
    construct_family, indecomposable_aut, is_isomorphic, tau_inverse_module, tau_module, Family, IsoSignature,
    KroneckerModule, Lambda,
};
use crate::linalg::{projective_points, Fq, FqMatrix};
use crate::order::GrMeasure;

/// Representatives kept per catalog row.
pub const REPRESENTATIVES: usize = 4;

const CHUNK: u64 = 1 << 12;

const CACHE_LIMIT: usize = 1 << 20;

thread_local! {
    static CACHE: RefCell<MeasureCache> = RefCell::new(MeasureCache::new(CACHE_LIMIT));
}

/// `μ` of a module known to be indecomposable, sharing this thread's cache.
fn measure_indecomposable(m: &KroneckerModule, caps: &Caps) -> Result<GrMeasure> {
    CACHE.with(|c| {
        let mut cache = c.borrow_mut();
        Lattice::with_cache(m, caps, &mut cache)?.assume_indecomposable(true).measure()
    })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Provenance {
    Exhaustive,
    Sampled,
    Family(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Exhaustive => f.write_str("exhaustive"),
            Provenance::Sampled => f.write_str("sampled"),
            Provenance::Family(name) => write!(f, "family({name})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanRecord {
    pub dim: DimVector,
    pub measure: GrMeasure,
    pub position: Position,
    /// Isomorphism classes realizing `measure` at `dim` (exact for
    /// exhaustive rows, distinct classes seen for sampled rows).
    pub iso_count: u64,
    pub provenance: Provenance,
    pub representatives: Vec<KroneckerModule>,
}

/// A dimension vector left out because its enumeration exceeds the cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedDim {
    pub dim: DimVector,
    pub tuples: u128,
    pub cap: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
    Families,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub n: usize,
    pub q: u32,
    pub max_length: usize,
    /// Every dimension vector of at most this length was enumerated, apart
    /// from those listed in `skipped`.
    pub exhaustive_length: usize,
    pub records: Vec<ScanRecord>,
    pub skipped: Vec<SkippedDim>,
}

impl Catalog {
    pub fn empty(n: usize, q: u32, max_length: usize) -> Self {
        Catalog { n, q, max_length, exhaustive_length: 0, records: Vec::new(), skipped: Vec::new() }
    }

    fn canonicalize(&mut self) {
        self.records.sort_by(|a, b| {
            (a.dim, &a.measure, &a.provenance).cmp(&(b.dim, &b.measure, &b.provenance))
        });
        self.skipped.sort_by_key(|s| s.dim);
        self.skipped.dedup();
    }

    /// Union of two catalogs over the same quiver and field.
    pub fn merge(mut self, other: Catalog) -> Result<Catalog> {
        if (self.n, self.q) != (other.n, other.q) {
            return Err(Error::ParameterMismatch("catalogs over different quivers or fields".into()));
        }
        self.max_length = self.max_length.max(other.max_length);
        self.exhaustive_length = self.exhaustive_length.max(other.exhaustive_length);
        self.records.extend(other.records);
        self.skipped.extend(other.skipped);
        // a dim covered exhaustively by one side is no longer skipped
        let covered: BTreeSet<DimVector> = self
            .records
            .iter()
            .filter(|r| r.provenance == Provenance::Exhaustive)
            .map(|r| r.dim)
            .collect();
        self.skipped.retain(|s| !covered.contains(&s.dim));
        self.canonicalize();
        Ok(self)
    }

    pub fn measures(&self) -> BTreeSet<GrMeasure> {
        self.records.iter().map(|r| r.measure.clone()).collect()
    }

    pub fn records_with(&self, measure: &GrMeasure) -> impl Iterator<Item = &ScanRecord> {
        let measure = measure.clone();
        self.records.iter().filter(move |r| r.measure == measure)
    }

    /// Writes `dim1,dim2,measure,position,iso_count,provenance`; skipped
    /// dimension vectors appear as rows with measure `-` and provenance
    /// `skipped(tuples=…)`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["dim1", "dim2", "measure", "position", "iso_count", "provenance"])?;
        for r in &self.records {
            w.write_record([
                r.dim.x1.to_string(),
                r.dim.x2.to_string(),
                r.measure.to_string(),
                r.position.to_string(),
                r.iso_count.to_string(),
                r.provenance.to_string(),
            ])?;
        }
        for s in &self.skipped {
            w.write_record([
                s.dim.x1.to_string(),
                s.dim.x2.to_string(),
                "-".into(),
                "-".into(),
                "0".into(),
                format!("skipped(tuples={})", s.tuples),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

/// Dimension vectors of length `1..=max_length`, ordered by length then `d1`.
pub fn dims_up_to(max_length: usize) -> Vec<(usize, usize)> {
    (1..=max_length).flat_map(|len| (0..=len).map(move |d1| (d1, len - d1))).collect()
}

fn pow_u128(q: u128, e: usize) -> Option<u128> {
    (0..e).try_fold(1u128, |acc, _| acc.checked_mul(q))
}

/// `|GL(d, F_q)|`.
pub fn gl_order(d: usize, q: u128) -> u128 {
    let qd = q.pow(d as u32);
    (0..d).map(|i| qd - q.pow(i as u32)).product()
}

/// Number of `rows × cols` matrices of rank `r` over `F_q`.
pub fn rank_count(rows: usize, cols: usize, r: usize, q: u128) -> u128 {
    if r > rows.min(cols) {
        return 0;
    }
    let mut num = 1u128;
    for i in 0..r {
        num *= (q.pow(rows as u32) - q.pow(i as u32)) * (q.pow(cols as u32) - q.pow(i as u32));
    }
    num / gl_order(r, q)
}

/// Normal-form tuples to visit for one dimension vector, if representable.
pub fn normalized_tuples(n: usize, q: u32, d1: usize, d2: usize) -> Option<u128> {
    let free = pow_u128(q as u128, n.saturating_sub(1) * d1 * d2)?;
    free.checked_mul((d1.min(d2) + 1) as u128)
}

#[derive(Default)]
struct Acc {
    // measure -> (Σ |Aut| over normal-form tuples, representatives)
    rows: BTreeMap<GrMeasure, (u128, Vec<KroneckerModule>)>,
}

impl Acc {
    fn add(&mut self, measure: GrMeasure, weight: u128, rep: impl FnOnce() -> KroneckerModule) {
        let entry = self.rows.entry(measure).or_default();
        entry.0 += weight;
        if entry.1.len() < REPRESENTATIVES {
            entry.1.push(rep());
        }
    }

    fn absorb(&mut self, other: Acc, scale: u128) {
        for (m, (w, reps)) in other.rows {
            let entry = self.rows.entry(m).or_default();
            entry.0 += w * scale;
            for r in reps {
                if entry.1.len() < REPRESENTATIVES {
                    entry.1.push(r);
                }
            }
        }
    }
}

fn normal_form(field: Fq, d1: usize, d2: usize, r: usize) -> FqMatrix {
    let mut a = FqMatrix::zeros(field, d2, d1);
    for i in 0..r {
        a.set(i, i, 1);
    }
    a
}

fn tuple_module(field: Fq, n: usize, d1: usize, d2: usize, first: &FqMatrix, mut index: u64) -> KroneckerModule {
    let q = field.q() as u64;
    let mut maps = Vec::with_capacity(n);
    maps.push(first.clone());
    for _ in 1..n {
        let mut data = vec![0u8; d1 * d2];
        for x in data.iter_mut() {
            *x = (index % q) as u8;
            index /= q;
        }
        maps.push(FqMatrix::new(field, d2, d1, data).expect("tuple shape"));
    }
    KroneckerModule::new(field, d1, d2, maps).expect("valid tuple")
}

fn scan_dim_exhaustive(field: Fq, n: usize, d1: usize, d2: usize, caps: &Caps) -> Result<Vec<ScanRecord>> {
    let q = field.q();
    let per_rank = pow_u128(q as u128, n.saturating_sub(1) * d1 * d2).expect("checked by caller") as u64;
    let mut total = Acc::default();
    for r in 0..=d1.min(d2) {
        let first = normal_form(field, d1, d2, r);
        let chunks = per_rank.div_ceil(CHUNK);
        let parts: Vec<Result<Acc>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut acc = Acc::default();
                for index in c * CHUNK..((c + 1) * CHUNK).min(per_rank) {
                    let m = tuple_module(field, n, d1, d2, &first, index);
                    if let Some(aut) = indecomposable_aut(&m, caps)? {
                        let measure = measure_indecomposable(&m, caps)?;
                        acc.add(measure, aut as u128, || m);
                    }
                }
                Ok(acc)
            })
            .collect();
        let scale = rank_count(d2, d1, r, q as u128);
        for part in parts {
            total.absorb(part?, scale);
        }
    }
    let group = gl_order(d1, q as u128) * gl_order(d2, q as u128);
    let dim = DimVector::new(d1 as i64, d2 as i64);
    total
        .rows
        .into_iter()
        .map(|(measure, (weight, representatives))| {
            if weight % group != 0 {
                return Err(Error::Precondition(format!(
                    "class count for {measure} at {dim} is not integral ({weight}/{group})"
                )));
            }
            Ok(ScanRecord {
                dim,
                position: classify_position(dim, n as i64, dim.length()),
                measure,
                iso_count: u64::try_from(weight / group).expect("class count fits"),
                provenance: Provenance::Exhaustive,
                representatives,
            })
        })
        .collect()
}

/// Applies `f` to every normal-form tuple at `(d1, d2)` (first arrow
/// `[I_r 0; 0 0]`, others free), keeping the `Some` results in enumeration
/// order. `f` receives the rank `r` of the first arrow.
pub fn map_normal_tuples<R, F>(n: usize, q: u32, d1: usize, d2: usize, caps: &Caps, f: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(usize, KroneckerModule) -> Result<Option<R>> + Sync,
{
    let field = Fq::new(q)?;
    match normalized_tuples(n, q, d1, d2) {
        Some(t) if t <= caps.exhaustive_tuples as u128 => {}
        t => {
            return Err(Error::CapExceeded(format!(
                "{} normal-form tuples at ({d1},{d2}) (cap {})",
                t.map_or("too many".to_string(), |t| t.to_string()),
                caps.exhaustive_tuples
            )))
        }
    }
    let per_rank = pow_u128(q as u128, n.saturating_sub(1) * d1 * d2).expect("checked above") as u64;
    let mut out = Vec::new();
    for r in 0..=d1.min(d2) {
        let first = normal_form(field, d1, d2, r);
        let parts: Vec<Result<Vec<R>>> = (0..per_rank.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                let mut part = Vec::new();
                for index in c * CHUNK..((c + 1) * CHUNK).min(per_rank) {
                    if let Some(x) = f(r, tuple_module(field, n, d1, d2, &first, index))? {
                        part.push(x);
                    }
                }
                Ok(part)
            })
            .collect();
        for part in parts {
            out.extend(part?);
        }
    }
    Ok(out)
}

/// Exhaustive catalog of dimension vectors in `dims`; over-cap ones are
/// reported in `skipped`.
pub fn scan_exhaustive_dims(n: usize, q: u32, dims: &[(usize, usize)], caps: &Caps) -> Result<Catalog> {
    let field = Fq::new(q)?;
    let max_length = dims.iter().map(|&(a, b)| a + b).max().unwrap_or(0);
    let mut cat = Catalog::empty(n, q, max_length);
    cat.exhaustive_length = (1..=max_length)
        .take_while(|&len| (0..=len).all(|d1| dims.contains(&(d1, len - d1))))
        .last()
        .unwrap_or(0);
    for &(d1, d2) in dims {
        match normalized_tuples(n, q, d1, d2) {
            Some(t) if t <= caps.exhaustive_tuples as u128 => {
                cat.records.extend(scan_dim_exhaustive(field, n, d1, d2, caps)?);
            }
            t => cat.skipped.push(SkippedDim {
                dim: DimVector::new(d1 as i64, d2 as i64),
                tuples: t.unwrap_or(u128::MAX),
                cap: caps.exhaustive_tuples,
            }),
        }
    }
    cat.canonicalize();
    Ok(cat)
}

/// Random tuples at each dimension vector in `dims`, deduplicated up to
/// isomorphism. Deterministic in `seed`.
pub fn scan_sampled_dims(
    n: usize,
    q: u32,
    dims: &[(usize, usize)],
    count: usize,
    seed: u64,
    caps: &Caps,
) -> Result<Catalog> {
    let field = Fq::new(q)?;
    let max_length = dims.iter().map(|&(a, b)| a + b).max().unwrap_or(0);
    let per_dim: Vec<Result<Vec<ScanRecord>>> = dims
        .par_iter()
        .map(|&(d1, d2)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((d1 as u64) << 32 | d2 as u64));
            let mut classes: BTreeMap<IsoSignature, Vec<(KroneckerModule, GrMeasure)>> = BTreeMap::new();
            for _ in 0..count {
                let maps = (0..n)
                    .map(|_| {
                        let data = (0..d1 * d2).map(|_| rng.gen_range(0..q) as u8).collect();
                        FqMatrix::new(field, d2, d1, data).expect("sample shape")
                    })
                    .collect();
                let m = KroneckerModule::new(field, d1, d2, maps)?;
                if indecomposable_aut(&m, caps)?.is_none() {
                    continue;
                }
                let bucket = classes.entry(IsoSignature::of(&m)).or_default();
                let mut seen = false;
                for (other, _) in bucket.iter() {
                    if is_isomorphic(&m, other, caps)? {
                        seen = true;
                        break;
                    }
                }
                if !seen {
                    let measure = measure_indecomposable(&m, caps)?;
                    bucket.push((m, measure));
                }
            }
            let mut rows: BTreeMap<GrMeasure, Vec<KroneckerModule>> = BTreeMap::new();
            for (m, measure) in classes.into_values().flatten() {
                rows.entry(measure).or_default().push(m);
            }
            let dim = DimVector::new(d1 as i64, d2 as i64);
            Ok(rows
                .into_iter()
                .map(|(measure, mut reps)| {
                    let iso_count = reps.len() as u64;
                    reps.truncate(REPRESENTATIVES);
                    ScanRecord {
                        dim,
                        position: classify_position(dim, n as i64, dim.length()),
                        measure,
                        iso_count,
                        provenance: Provenance::Sampled,
                        representatives: reps,
                    }
                })
                .collect())
        })
        .collect();
    let mut cat = Catalog::empty(n, q, max_length);
    for rows in per_dim {
        cat.records.extend(rows?);
    }
    cat.canonicalize();
    Ok(cat)
}

fn one_one(field: Fq, c: &[u8]) -> KroneckerModule {
    let maps = c.iter().map(|&x| FqMatrix::new(field, 1, 1, vec![x]).expect("1x1")).collect();
    KroneckerModule::new(field, 1, 1, maps).expect("valid (1,1) module")
}

/// Named modules of length at most `max_length`, each with its name.
pub fn family_modules(n: usize, q: u32, max_length: usize, caps: &Caps) -> Result<Vec<(String, KroneckerModule)>> {
    let field = Fq::new(q)?;
    let nn = n as i64;
    let fits = |d: DimVector| d.length() <= max_length as i64;
    let mut out: Vec<(String, KroneckerModule)> = Vec::new();
    let mut push = |family: Family| -> Result<()> {
        out.push((family.to_string(), construct_family(family, n, field)?));
        Ok(())
    };
    if max_length >= 1 {
        push(Family::Simple { vertex: 1 })?;
        push(Family::Simple { vertex: 2 })?;
    }
    if n >= 2 {
        for (i, d) in preprojective_dims(nn, max_length).into_iter().enumerate().skip(1) {
            if fits(d) {
                push(Family::P { r: i + 1 })?;
            }
        }
        for (r, d) in preinjective_dims(nn, max_length).into_iter().enumerate().skip(1) {
            if fits(d) {
                push(Family::Q { r })?;
            }
        }
    }
    if n >= 2 {
        let lambdas: Vec<Lambda> = (0..q as u8).map(Lambda::Finite).chain([Lambda::Infinity]).collect();
        for m in 1..=max_length / 2 {
            for &lambda in &lambdas {
                push(Family::Regular2k { m, lambda })?;
            }
        }
        for m in 1..=max_length.saturating_sub(1) / 2 {
            push(Family::Preproj2k { m })?;
            push(Family::Preinj2k { m })?;
        }
    }
    // τ-orbit seeds: (1,1) modules and their translates
    if max_length >= 2 && n >= 1 {
        for c in projective_points(field, n) {
            let label: String = c.iter().map(|x| x.to_string()).collect();
            let x = one_one(field, &c);
            out.push((format!("X[{label}]"), x.clone()));
            if n >= 2 {
                if fits(tau_dim(x.dim(), nn)) {
                    out.push((format!("tau(X[{label}])"), tau_module(&x, caps)?));
                }
                if fits(tau_inv_dim(x.dim(), nn)) {
                    out.push((format!("tauinv(X[{label}])"), tau_inverse_module(&x, caps)?));
                }
            }
        }
    }
    Ok(out)
}

/// Catalog rows for [`family_modules`].
pub fn scan_families(n: usize, q: u32, max_length: usize, caps: &Caps) -> Result<Catalog> {
    let mods = family_modules(n, q, max_length, caps)?;
    let rows: Vec<Result<ScanRecord>> = mods
        .into_par_iter()
        .map(|(name, m)| {
            let measure = gr_measure(&m, caps)?;
            let dim = m.dim();
            Ok(ScanRecord {
                dim,
                position: classify_position(dim, n as i64, dim.length()),
                measure,
                iso_count: 1,
                provenance: Provenance::Family(name),
                representatives: vec![m],
            })
        })
        .collect();
    let mut cat = Catalog::empty(n, q, max_length);
    for r in rows {
        cat.records.push(r?);
    }
    cat.canonicalize();
    Ok(cat)
}

/// Catalog of realized measures up to `max_length`.
pub fn scan_realized(n: usize, q: u32, max_length: usize, mode: ScanMode, caps: &Caps) -> Result<Catalog> {
    let dims = dims_up_to(max_length);
    match mode {
        ScanMode::Exhaustive => scan_exhaustive_dims(n, q, &dims, caps),
        ScanMode::Sampled { count, seed } => scan_sampled_dims(n, q, &dims, count, seed, caps),
        ScanMode::Families => scan_families(n, q, max_length, caps),
    }
}
