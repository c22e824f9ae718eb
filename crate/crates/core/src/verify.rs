//! Named verification suites. Each returns a [`SuiteResult`]; a suite passes
//! iff it records no failure. All randomness flows from `VerifyConfig::seed`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ar::{
    cartan, coxeter, coxeter_inv, euler_form, mat_mul, preinjective_dims, preprojective_dims,
    transpose, unimodular_inverse, DimVector,
};
use crate::config::Caps;
use crate::engine::scan::{dims_up_to, map_normal_tuples, scan_exhaustive_dims, scan_families, scan_sampled_dims};
use crate::engine::{gap_scan, gr_measure, gr_measure_oracle, regular_factor_check, takeoff_sequence, Catalog};
use crate::error::{Error, Result};
use crate::kronecker::{
    decompose, embed2k, ext_dim, hom_dim, indecomposable_aut, is_indecomposable, is_isomorphic, p_module, preinj2k,
    preproj2k, regular2k, tau_module, KroneckerModule, Lambda,
};
use crate::linalg::{Fq, FqMatrix};
use crate::order::{mu_lower, mu_upper, GrMeasure};

pub const SUITES: [&str; 11] = [
    "arithmetic",
    "euler",
    "lemma24",
    "section22",
    "tau25",
    "oracle",
    "takeoff",
    "gapscan",
    "regfactor",
    "order",
    "krullschmidt",
];

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub n: Option<usize>,
    pub q: Option<u32>,
    pub m: Option<u32>,
    pub max_length: Option<usize>,
    /// Random modules drawn per skipped dimension vector, or per sampled case.
    pub samples: Option<usize>,
    pub seed: u64,
    pub caps: Caps,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { n: None, q: None, m: None, max_length: None, samples: None, seed: 2024, caps: Caps::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub passed: bool,
    pub cases: u64,
    pub failures: u64,
    pub wall_ms: u128,
    /// Failure messages (capped) followed by informational lines.
    pub details: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<serde_json::Value>,
}

impl SuiteResult {
    pub fn summary_line(&self) -> String {
        format!(
            "{} {} cases={} failures={} time={:.1}s",
            self.suite,
            if self.passed { "PASS" } else { "FAIL" },
            self.cases,
            self.failures,
            self.wall_ms as f64 / 1000.0
        )
    }
}

const MAX_REPORTED: usize = 20;

struct Tally {
    cases: u64,
    failures: u64,
    details: Vec<String>,
    notes: Vec<String>,
    report: Option<serde_json::Value>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, failures: 0, details: Vec::new(), notes: Vec::new(), report: None }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures += 1;
        if self.details.len() < MAX_REPORTED {
            self.details.push(msg);
        }
    }

    fn note(&mut self, msg: String) {
        self.notes.push(msg);
    }

    fn finish(mut self, suite: &str, start: Instant) -> SuiteResult {
        self.details.extend(self.notes);
        SuiteResult {
            suite: suite.to_string(),
            passed: self.failures == 0,
            cases: self.cases,
            failures: self.failures,
            wall_ms: start.elapsed().as_millis(),
            details: self.details,
            report: self.report,
        }
    }
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteResult> {
    let start = Instant::now();
    let tally = match name {
        "arithmetic" => arithmetic()?,
        "euler" => euler(cfg)?,
        "lemma24" => small_measures(cfg)?,
        "section22" => two_kronecker_families(cfg)?,
        "tau25" => tau_of_length_two(cfg)?,
        "oracle" => oracle(cfg)?,
        "takeoff" => takeoff(cfg)?,
        "gapscan" => gapscan(cfg)?,
        "regfactor" => regfactor(cfg)?,
        "order" => order(cfg)?,
        "krullschmidt" => krullschmidt(cfg)?,
        other => return Err(Error::Parse(format!("unknown suite {other:?}; known: {}", SUITES.join(", ")))),
    };
    Ok(tally.finish(name, start))
}

fn rng(cfg: &VerifyConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt)
}

/// Uniformly random tuple of `n` matrices of shape `d2 × d1`.
pub fn random_module(rng: &mut impl Rng, field: Fq, n: usize, d1: usize, d2: usize) -> KroneckerModule {
    let maps = (0..n)
        .map(|_| {
            let data = (0..d1 * d2).map(|_| rng.gen_range(0..field.q()) as u8).collect();
            FqMatrix::new(field, d2, d1, data).expect("shape")
        })
        .collect();
    KroneckerModule::new(field, d1, d2, maps).expect("valid module")
}

fn random_invertible(rng: &mut impl Rng, field: Fq, d: usize) -> FqMatrix {
    loop {
        let data = (0..d * d).map(|_| rng.gen_range(0..field.q()) as u8).collect();
        let g = FqMatrix::new(field, d, d, data).expect("shape");
        if g.is_invertible() {
            return g;
        }
    }
}

// ---------------------------------------------------------------- catalogs

type CatalogKey = (usize, u32, usize, &'static str, u64, u64);

fn catalog_store() -> &'static Mutex<HashMap<CatalogKey, Arc<Catalog>>> {
    static STORE: OnceLock<Mutex<HashMap<CatalogKey, Arc<Catalog>>>> = OnceLock::new();
    STORE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(key: CatalogKey, build: impl FnOnce() -> Result<Catalog>) -> Result<Arc<Catalog>> {
    if let Some(c) = catalog_store().lock().expect("catalog store").get(&key) {
        return Ok(c.clone());
    }
    let cat = Arc::new(build()?);
    catalog_store().lock().expect("catalog store").insert(key, cat.clone());
    Ok(cat)
}

/// Exhaustive catalog to `len` (within caps), memoized per process.
pub fn exhaustive_catalog(n: usize, q: u32, len: usize, caps: &Caps) -> Result<Arc<Catalog>> {
    let longer = catalog_store()
        .lock()
        .expect("catalog store")
        .iter()
        .filter(|(k, _)| k.0 == n && k.1 == q && k.2 > len && k.3 == "exhaustive" && k.4 == caps.exhaustive_tuples)
        .map(|(_, c)| c.clone())
        .next();
    if let Some(c) = longer {
        return Ok(Arc::new(truncate(&c, len)));
    }
    cached((n, q, len, "exhaustive", caps.exhaustive_tuples, 0), || {
        scan_exhaustive_dims(n, q, &dims_up_to(len), caps)
    })
}

fn families_catalog(n: usize, q: u32, len: usize, caps: &Caps) -> Result<Arc<Catalog>> {
    cached((n, q, len, "families", 0, 0), || scan_families(n, q, len, caps))
}

/// Random modules at the dimension vectors the exhaustive catalog skipped.
fn supplement(cat: &Catalog, samples: usize, seed: u64, caps: &Caps) -> Result<Arc<Catalog>> {
    let dims: Vec<(usize, usize)> =
        cat.skipped.iter().map(|s| (s.dim.x1 as usize, s.dim.x2 as usize)).collect();
    cached((cat.n, cat.q, cat.max_length, "sampled", samples as u64, seed), || {
        scan_sampled_dims(cat.n, cat.q, &dims, samples, seed, caps)
    })
}

fn truncate(cat: &Catalog, len: usize) -> Catalog {
    let mut out = cat.clone();
    out.max_length = len;
    out.exhaustive_length = out.exhaustive_length.min(len);
    out.records.retain(|r| r.dim.length() as usize <= len);
    out.skipped.retain(|s| s.dim.length() as usize <= len);
    out
}

// ------------------------------------------------------------------ suites

fn arithmetic() -> Result<Tally> {
    let mut t = Tally::new();
    let id = [[1, 0], [0, 1]];
    for n in 1..=8i64 {
        let c = cartan(n);
        let c_inv_t = unimodular_inverse(&transpose(&c)).expect("Cartan matrix is unimodular");
        let minus = mat_mul(&c_inv_t, &c).map(|r| r.map(|x| -x));
        t.check(minus == coxeter(n), || format!("Φ ≠ −C^-T·C at n={n}"));
        t.check(mat_mul(&coxeter(n), &coxeter_inv(n)) == id, || format!("Φ·Φ⁻¹ ≠ I at n={n}"));
        t.check(mat_mul(&coxeter_inv(n), &coxeter(n)) == id, || format!("Φ⁻¹·Φ ≠ I at n={n}"));
    }
    for n in 2..=6i64 {
        let p = preprojective_dims(n, 4);
        let q = preinjective_dims(n, 7);
        let want_p = [(0, 1), (1, n), (n, n * n - 1), (n * n - 1, n * n * n - 2 * n)];
        let want_q = [(1, 0), (n, 1), (n * n - 1, n), (n * n * n - 2 * n, n * n - 1)];
        for (r, w) in want_p.iter().enumerate() {
            t.check(p[r] == DimVector::new(w.0, w.1), || format!("P_{} = {} at n={n}, expected {w:?}", r + 1, p[r]));
        }
        for (r, w) in want_q.iter().enumerate() {
            t.check(q[r] == DimVector::new(w.0, w.1), || format!("Q_{r} = {} at n={n}, expected {w:?}", q[r]));
        }
        for r in 1..=6 {
            t.check(q[r].scale(n) == q[r + 1] + q[r - 1], || format!("n·Q_{r} ≠ Q_{} + Q_{} at n={n}", r + 1, r - 1));
        }
    }
    Ok(t)
}

fn euler(cfg: &VerifyConfig) -> Result<Tally> {
    let mut t = Tally::new();
    let mut rng = rng(cfg, 1);
    let pairs = cfg.samples.unwrap_or(240);
    for _ in 0..pairs {
        let q = *[2u32, 3].choose(&mut rng).expect("nonempty");
        let n = rng.gen_range(2..=4usize);
        let field = Fq::new(q)?;
        let mut dim = || (rng.gen_range(0..=4usize), rng.gen_range(0..=4usize));
        let ((a1, a2), (b1, b2)) = (dim(), dim());
        let x = random_module(&mut rng, field, n, a1, a2);
        let y = random_module(&mut rng, field, n, b1, b2);
        let lhs = hom_dim(&x, &y)? as i64 - ext_dim(&x, &y)? as i64;
        let rhs = euler_form(x.dim(), y.dim(), n as i64);
        t.check(lhs == rhs, || format!("hom − ext = {lhs} ≠ ⟨{}, {}⟩ = {rhs} (n={n}, q={q})", x.dim(), y.dim()));
    }
    Ok(t)
}

fn small_measures(cfg: &VerifyConfig) -> Result<Tally> {
    let mut t = Tally::new();
    let (n, q) = (cfg.n.unwrap_or(3), cfg.q.unwrap_or(2));
    let len = cfg.max_length.unwrap_or(5);
    let cat = exhaustive_catalog(n, q, len, &cfg.caps)?;
    for s in &cat.skipped {
        t.fail(format!("dimension vector {} skipped ({} tuples over cap)", s.dim, s.tuples));
    }
    let (m12, m123): (GrMeasure, GrMeasure) = ("{1,2}".parse()?, "{1,2,3}".parse()?);
    let (d11, d21) = (DimVector::new(1, 1), DimVector::new(2, 1));
    let mut classes = 0;
    for r in &cat.records {
        classes += r.iso_count;
        t.check((r.measure == m12) == (r.dim == d11), || {
            format!("{} classes at {} have measure {}", r.iso_count, r.dim, r.measure)
        });
        t.check((r.measure == m123) == (r.dim == d21), || {
            format!("{} classes at {} have measure {}", r.iso_count, r.dim, r.measure)
        });
    }
    t.note(format!("{classes} indecomposable classes up to length {len} (n={n}, q={q})"));
    Ok(t)
}

fn two_kronecker_families(cfg: &VerifyConfig) -> Result<Tally> {
    let mut t = Tally::new();
    let (n, q) = (cfg.n.unwrap_or(3), cfg.q.unwrap_or(2));
    let field = Fq::new(q)?;
    let caps = &cfg.caps;
    let lambdas = [Lambda::Finite(0), Lambda::Finite(1), Lambda::Infinity];
    for m in 1..=3usize {
        let mm = m as u32;
        let odd = GrMeasure::from_elements((0..=mm).map(|k| 2 * k + 1).collect())?;
        let cases: Vec<(String, KroneckerModule, GrMeasure)> = std::iter::once((
            format!("preproj2k({m})"),
            preproj2k(m, field),
            odd,
        ))
        .chain(lambdas.iter().map(|&l| (format!("regular2k({m};{l})"), regular2k(m, l, field).expect("λ in field"), mu_lower(mm))))
        .chain(std::iter::once((format!("preinj2k({m})"), preinj2k(m, field), mu_upper(mm))))
        .collect();
        for (name, two, want) in cases {
            let embedded = embed2k(&two, n)?;
            let got = gr_measure(&embedded, caps)?;
            t.check(got == want, || format!("{name} embedded at n={n}: {got}, expected {want}"));
            let plain = gr_measure(&two, caps)?;
            t.check(plain == got, || format!("{name}: {plain} as a 2-Kronecker module, {got} embedded"));
        }
    }
    Ok(t)
}

fn tau_of_length_two(cfg: &VerifyConfig) -> Result<Tally> {
    let mut t = Tally::new();
    let mut rng = rng(cfg, 5);
    let per = cfg.samples.unwrap_or(20);
    let caps = &cfg.caps;
    for n in [3usize, 4] {
        for q in [2u32, 3, 5] {
            let field = Fq::new(q)?;
            let p1 = p_module(1, n, field)?;
            for _ in 0..per {
                let x = loop {
                    let x = random_module(&mut rng, field, n, 1, 1);
                    if !x.is_semisimple() {
                        break x;
                    }
                };
                let tx = tau_module(&x, caps)?;
                let nn = n as i64;
                let want = DimVector::new(nn * nn - nn - 1, nn - 1);
                t.check(tx.dim() == want, || format!("dim τX = {} ≠ {want} (n={n}, q={q})", tx.dim()));
                let h = hom_dim(&x, &tx)?;
                t.check(h >= n - 2 && n >= 3, || format!("hom(X, τX) = {h} < {} (n={n}, q={q})", n - 2));
                let e = ext_dim(&x, &p1)?;
                t.check(e >= 1, || format!("ext(X, P_1) = 0 (n={n}, q={q})"));
                if n == 3 && q == 2 {
                    let mu = gr_measure(&tx, caps)?;
                    t.check(mu.starts_with(&mu_upper(1)), || format!("μ(τX) = {mu} does not start with {{1,2,3}}"));
                }
            }
        }
    }
    Ok(t)
}

fn oracle(cfg: &VerifyConfig) -> Result<Tally> {
    let mut t = Tally::new();
    let (n, q) = (cfg.n.unwrap_or(3), cfg.q.unwrap_or(2));
    let caps = &cfg.caps;
    let len = cfg.max_length.unwrap_or(4);
    for (d1, d2) in dims_up_to(len) {
        let mismatches = map_normal_tuples(n, q, d1, d2, caps, |_, m| {
            if indecomposable_aut(&m, caps)?.is_none() {
                return Ok(None);
            }
            let (fast, slow) = (gr_measure(&m, caps)?, gr_measure_oracle(&m, caps)?);
            Ok(Some((fast != slow).then(|| format!("{}: engine {fast}, oracle {slow}", m.to_json()))))
        })?;
        for mismatch in mismatches {
            t.check(mismatch.is_none(), || mismatch.clone().unwrap_or_default());
        }
    }
    let exhaustive = t.cases;
    let mut rng = rng(cfg, 6);
    let field = Fq::new(q)?;
    let want = cfg.samples.unwrap_or(60);
    let dims: Vec<(usize, usize)> = (0..=5).map(|d1| (d1, 5 - d1)).filter(|&(a, b)| a > 0 && b > 0).collect();
    let mut sampled = 0;
    let mut draws = 0;
    while sampled < want && draws < want * 1000 {
        draws += 1;
        let &(d1, d2) = dims.choose(&mut rng).expect("nonempty");
        let m = random_module(&mut rng, field, n, d1, d2);
        if !is_indecomposable(&m, caps)? {
            continue;
        }
        sampled += 1;
        let (fast, slow) = (gr_measure(&m, caps)?, gr_measure_oracle(&m, caps)?);
        t.check(fast == slow, || format!("{}: engine {fast}, oracle {slow}", m.to_json()));
    }
    if sampled < want {
        t.fail(format!("only {sampled} indecomposable length-5 samples found"));
    }
    t.note(format!("{exhaustive} normal-form tuples up to length {len}, {sampled} sampled length-5 modules"));
    Ok(t)
}

fn takeoff(cfg: &VerifyConfig) -> Result<Tally> {
    let mut t = Tally::new();
    let (n, q) = (cfg.n.unwrap_or(3), cfg.q.unwrap_or(2));
    let len = cfg.max_length.unwrap_or(8);
    let caps = &cfg.caps;
    let ex = exhaustive_catalog(n, q, len, caps)?;
    let extra = supplement(&ex, cfg.samples.unwrap_or(200), cfg.seed, caps)?;
    let cat = (*ex).clone().merge((*extra).clone())?;
    let depth = (2..=4).take_while(|&r| preprojective_dims(n as i64, r)[r - 1].length() as usize <= caps.submodule_length).last().unwrap_or(2);
    let rep = takeoff_sequence(n, q, depth, Some(&cat), caps)?;
    t.cases += rep.measures.len() as u64 + cat.records.len() as u64;
    for v in &rep.violations {
        t.fail(v.clone());
    }
    let i2 = &rep.measures[1];
    let p2_len = n as u32 + 1;
    t.check(*i2 == GrMeasure::from_elements(vec![1, p2_len])?, || format!("I_2 = {i2}, expected {{1,{p2_len}}}"));
    let p2_rows: Vec<_> = cat.records_with(i2).collect();
    let classes: u64 = p2_rows.iter().filter(|r| r.provenance == crate::engine::Provenance::Exhaustive).map(|r| r.iso_count).sum();
    t.check(classes == 1, || format!("{i2} realized by {classes} classes in the exhaustive catalog"));
    t.note(format!(
        "take-off {} ; catalog: exhaustive to length {len}, {} dims skipped ({}) and sampled {} times each",
        rep.measures.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" < "),
        ex.skipped.len(),
        ex.skipped.iter().map(|s| s.dim.to_string()).collect::<Vec<_>>().join(" "),
        cfg.samples.unwrap_or(200)
    ));
    t.report = Some(serde_json::to_value(&rep)?);
    Ok(t)
}

fn gapscan(cfg: &VerifyConfig) -> Result<Tally> {
    let mut t = Tally::new();
    let n = cfg.n.unwrap_or(3);
    let qs: Vec<u32> = cfg.q.map_or(vec![2, 3], |q| vec![q]);
    let ms: Vec<u32> = cfg.m.map_or(vec![1, 2], |m| vec![m]);
    let ex_len = cfg.max_length.unwrap_or(7);
    let fam_len = ex_len + 2;
    let samples = cfg.samples.unwrap_or(100);
    let caps = &cfg.caps;
    let mut reports = Vec::new();
    for &q in &qs {
        let ex = exhaustive_catalog(n, q, ex_len, caps)?;
        let fam = families_catalog(n, q, fam_len, caps)?;
        let extra = supplement(&ex, samples, cfg.seed, caps)?;
        let cat = (*ex).clone().merge((*fam).clone())?.merge((*extra).clone())?;
        for &m in &ms {
            let rep = gap_scan(m, &cat, caps)?;
            let upper = mu_upper(m);
            t.cases += rep.realized as u64;
            for v in &rep.violations {
                t.fail(format!("q={q} m={m}: {v}"));
            }
            // Only the largest catalog measure below μ^m may stay
            // unwitnessed, and only when its extensions are out of reach.
            let boundary = cat.measures().range(..upper.clone()).next_back().map(|b| b.to_string());
            for (u, why) in rep.unwitnessed.iter().zip(&rep.unresolved) {
                let excused = boundary.as_deref() == Some(u.as_str()) && why.contains("beyond the lattice cap");
                t.check(excused, || format!("q={q} m={m}: {why}"));
            }
            t.note(format!(
                "q={q} m={m}: {} realized; extension witnesses {:?}; unresolved {:?}; skipped [{}] sampled {samples} each",
                rep.realized,
                rep.extension_witnesses,
                rep.unresolved,
                rep.skipped.join(" ")
            ));
            reports.push(serde_json::to_value(&rep)?);
        }
    }
    t.report = Some(serde_json::Value::Array(reports));
    Ok(t)
}

fn regfactor(cfg: &VerifyConfig) -> Result<Tally> {
    let mut t = Tally::new();
    let (n, q) = (cfg.n.unwrap_or(3), cfg.q.unwrap_or(2));
    let max_m = cfg.m.unwrap_or(3);
    let caps = &cfg.caps;
    let len = (2 * max_m + 1) as usize;
    let ex = exhaustive_catalog(n, q, len, caps)?;
    let fam = families_catalog(n, q, len, caps)?;
    let extra = supplement(&ex, cfg.samples.unwrap_or(200), cfg.seed, caps)?;
    let cat = (*ex).clone().merge((*fam).clone())?.merge((*extra).clone())?;
    let mut quotients = 0;
    let mut modules = 0u64;
    for m in 1..=max_m {
        let targets = [(mu_lower(m), (m, m)), (mu_upper(m), (m + 1, m))];
        for (measure, (d1, d2)) in targets {
            let shape = DimVector::new(d1 as i64, d2 as i64);
            for rec in cat.records_with(&measure) {
                t.check(rec.dim == shape, || format!("{measure} realized at {} ({})", rec.dim, rec.provenance));
            }
            let exhaustive_here = !ex.skipped.iter().any(|s| s.dim == shape);
            if exhaustive_here {
                let found = map_normal_tuples(n, q, d1 as usize, d2 as usize, caps, |_, x| {
                    if indecomposable_aut(&x, caps)?.is_none() || gr_measure(&x, caps)? != measure {
                        return Ok(None);
                    }
                    Ok(Some(regular_factor_check(&x, caps)?))
                })?;
                for check in found {
                    modules += 1;
                    quotients += check.checked;
                    t.cases += 1;
                    for v in check.violations {
                        t.fail(v);
                    }
                }
            } else {
                for rec in cat.records_with(&measure) {
                    for x in &rec.representatives {
                        let check = regular_factor_check(x, caps)?;
                        modules += 1;
                        quotients += check.checked;
                        t.cases += 1;
                        for v in check.violations {
                            t.fail(v);
                        }
                    }
                }
                t.note(format!("{shape}: over the exhaustive cap, checked catalogue representatives only"));
            }
        }
    }
    t.note(format!("{modules} modules, {quotients} indecomposable regular quotients checked"));
    Ok(t)
}

fn random_measure(rng: &mut impl Rng, max: u32) -> GrMeasure {
    let elements: Vec<u32> = (1..=max).filter(|_| rng.gen_bool(0.4)).collect();
    GrMeasure::from_elements(elements).expect("increasing")
}

/// Reference comparison, written from the definition: `I < J` iff the
/// smallest element of the symmetric difference lies in `J`.
fn reference_less(i: &GrMeasure, j: &GrMeasure) -> bool {
    let (a, b) = (i.elements(), j.elements());
    let diff = a.iter().filter(|x| !b.contains(x)).chain(b.iter().filter(|x| !a.contains(x))).min();
    diff.is_some_and(|d| b.contains(d))
}

fn order(cfg: &VerifyConfig) -> Result<Tally> {
    let mut t = Tally::new();
    let mut rng = rng(cfg, 10);
    let triples = cfg.samples.unwrap_or(10_000);
    for _ in 0..triples {
        let (i, j, k) = (random_measure(&mut rng, 12), random_measure(&mut rng, 12), random_measure(&mut rng, 12));
        let rels = [i < j, i == j, i > j];
        t.check(rels.iter().filter(|&&b| b).count() == 1, || format!("trichotomy fails for {i}, {j}"));
        t.check((i < j) == reference_less(&i, &j), || format!("{i} < {j} disagrees with the definition"));
        if i < j && j < k {
            t.check(i < k, || format!("transitivity fails for {i} < {j} < {k}"));
        }
    }
    // I < J < I' with I' starting with I forces J to start with I
    let mut hits = 0;
    while hits < triples / 10 {
        let i = random_measure(&mut rng, 8);
        let top = i.max_element().unwrap_or(0);
        let mut ext = i.elements().to_vec();
        ext.extend((top + 1..=top + 4).filter(|_| rng.gen_bool(0.5)));
        let i2 = GrMeasure::from_elements(ext)?;
        let keep = rng.gen_range(0..=i2.len());
        let mut jv = i2.elements()[..keep].to_vec();
        let start = jv.last().copied().unwrap_or(0);
        jv.extend((start + 1..=start + 6).filter(|_| rng.gen_bool(0.5)));
        let j = GrMeasure::from_elements(jv)?;
        if i < j && j < i2 && i2.starts_with(&i) {
            hits += 1;
            t.check(j.starts_with(&i), || format!("{i} < {j} < {i2} but {j} does not start with {i}"));
        }
    }
    for s in 1..=12u32 {
        t.check(mu_lower(s) < mu_lower(s + 1), || format!("μ_{s} ≮ μ_{}", s + 1));
        t.check(mu_upper(s + 1) < mu_upper(s), || format!("μ^{} ≮ μ^{s}", s + 1));
        for u in 1..=12u32 {
            t.check(mu_lower(s) < mu_upper(u), || format!("μ_{s} ≮ μ^{u}"));
        }
    }
    Ok(t)
}

fn krullschmidt(cfg: &VerifyConfig) -> Result<Tally> {
    let mut t = Tally::new();
    let mut rng = rng(cfg, 11);
    let caps = &cfg.caps;
    let sums = cfg.samples.unwrap_or(100);
    for case in 0..sums {
        let q = if case % 2 == 0 { 2 } else { 3 };
        let n = cfg.n.unwrap_or(3);
        let field = Fq::new(q)?;
        let k = rng.gen_range(2..=3);
        let mut parts = Vec::new();
        while parts.len() < k {
            let (d1, d2) = (rng.gen_range(0..=2usize), rng.gen_range(0..=2usize));
            if d1 + d2 == 0 {
                continue;
            }
            let x = random_module(&mut rng, field, n, d1, d2);
            if is_indecomposable(&x, caps)? {
                parts.push(x);
            }
        }
        let mut sum = parts[0].clone();
        for p in &parts[1..] {
            sum = sum.direct_sum(p)?;
        }
        let g1 = random_invertible(&mut rng, field, sum.d1());
        let g2 = random_invertible(&mut rng, field, sum.d2());
        let mixed = sum.change_basis(&g1, &g2)?;
        let found = decompose(&mixed, caps)?;
        let mut unmatched = parts.clone();
        let mut ok = found.len() == parts.len();
        for f in &found {
            match unmatched.iter().position(|p| is_isomorphic(p, f, caps).unwrap_or(false)) {
                Some(i) => {
                    unmatched.remove(i);
                }
                None => ok = false,
            }
        }
        t.check(ok && unmatched.is_empty(), || {
            format!(
                "case {case}: summands {:?} recovered as {:?}",
                parts.iter().map(|p| p.dim().to_string()).collect::<Vec<_>>(),
                found.iter().map(|p| p.dim().to_string()).collect::<Vec<_>>()
            )
        });
    }
    Ok(t)
}
