//! Gabriel-Roiter measures by recursion over the submodule lattice.
//!
//! For a submodule `S` of the ambient module, `μ(S)` is the maximum of
//! `μ(Y)` over the colength-one submodules `Y ⊂ S`, extended by `|S|` when
//! `S` is indecomposable. Every proper indecomposable submodule lies in some
//! colength-one submodule and `μ` is monotone under inclusion, so this equals
//! the chain definition. Values are memoized per submodule pair, and
//! optionally in a [`MeasureCache`] keyed on the restricted module itself, so
//! that identical submodules of different ambient modules are evaluated once.

use rustc_hash::FxHashMap as HashMap;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::kronecker::{is_indecomposable, KroneckerModule, SubmodulePair};
use crate::order::GrMeasure;

#[derive(Clone, Debug)]
struct Node {
    measure: GrMeasure,
    indecomposable: bool,
}

/// Measures and indecomposability of exact modules (not iso classes).
/// Bounded: cleared when full, which only costs recomputation.
pub struct MeasureCache {
    map: HashMap<KroneckerModule, Node>,
    limit: usize,
}

impl MeasureCache {
    pub fn new(limit: usize) -> Self {
        MeasureCache { map: HashMap::default(), limit }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn get(&self, m: &KroneckerModule) -> Option<&Node> {
        self.map.get(m)
    }

    fn insert(&mut self, m: KroneckerModule, node: Node) {
        if self.map.len() >= self.limit {
            self.map.clear();
        }
        self.map.insert(m, node);
    }
}

enum CacheSlot<'a> {
    Owned(MeasureCache),
    Borrowed(&'a mut MeasureCache),
}

impl CacheSlot<'_> {
    fn get(&mut self) -> &mut MeasureCache {
        match self {
            CacheSlot::Owned(c) => c,
            CacheSlot::Borrowed(c) => c,
        }
    }
}

/// Memoized view of one module's submodule lattice.
pub struct Lattice<'a> {
    module: &'a KroneckerModule,
    caps: &'a Caps,
    nodes: HashMap<SubmodulePair, Node>,
    cache: CacheSlot<'a>,
    top_indecomposable: Option<bool>,
}

impl<'a> Lattice<'a> {
    pub fn new(module: &'a KroneckerModule, caps: &'a Caps) -> Result<Self> {
        Self::build(module, caps, CacheSlot::Owned(MeasureCache::new(1 << 16)))
    }

    /// A lattice sharing `cache` with other computations.
    pub fn with_cache(module: &'a KroneckerModule, caps: &'a Caps, cache: &'a mut MeasureCache) -> Result<Self> {
        Self::build(module, caps, CacheSlot::Borrowed(cache))
    }

    fn build(module: &'a KroneckerModule, caps: &'a Caps, cache: CacheSlot<'a>) -> Result<Self> {
        if module.len() > caps.submodule_length {
            return Err(Error::CapExceeded(format!(
                "measure of a length-{} module (cap {})",
                module.len(),
                caps.submodule_length
            )));
        }
        Ok(Lattice { module, caps, nodes: HashMap::default(), cache, top_indecomposable: None })
    }

    /// Records an already known answer for the ambient module's
    /// indecomposability.
    pub fn assume_indecomposable(mut self, indecomposable: bool) -> Self {
        self.top_indecomposable = Some(indecomposable);
        self
    }

    pub fn module(&self) -> &KroneckerModule {
        self.module
    }

    fn eval(&mut self, s: &SubmodulePair) -> Result<Node> {
        if let Some(node) = self.nodes.get(s) {
            return Ok(node.clone());
        }
        let len = s.len();
        let node = if len == 0 {
            Node { measure: GrMeasure::empty(), indecomposable: false }
        } else {
            let sub = self.module.restrict_unchecked(s);
            if sub.is_semisimple() {
                Node { measure: GrMeasure::from_elements(vec![1])?, indecomposable: len == 1 }
            } else if let Some(node) = self.cache.get().get(&sub) {
                node.clone()
            } else {
                let mut best = GrMeasure::empty();
                for y in self.module.maximal_submodules(s) {
                    let m = self.eval(&y)?.measure;
                    if m > best {
                        best = m;
                    }
                }
                let indecomposable = match self.top_indecomposable {
                    Some(known) if len == self.module.len() => known,
                    _ => is_indecomposable(&sub, self.caps)?,
                };
                let measure = if indecomposable { best.extend(len as u32)? } else { best };
                let node = Node { measure, indecomposable };
                self.cache.get().insert(sub, node.clone());
                node
            }
        };
        self.nodes.insert(s.clone(), node.clone());
        Ok(node)
    }

    pub fn measure_of(&mut self, s: &SubmodulePair) -> Result<GrMeasure> {
        Ok(self.eval(s)?.measure)
    }

    /// Whether the submodule `s` is indecomposable (`false` for zero).
    pub fn is_indecomposable(&mut self, s: &SubmodulePair) -> Result<bool> {
        Ok(self.eval(s)?.indecomposable)
    }

    pub fn measure(&mut self) -> Result<GrMeasure> {
        let full = SubmodulePair::full(self.module);
        self.measure_of(&full)
    }

    /// Proper indecomposable submodules of maximal measure.
    pub fn gr_submodules(&mut self) -> Result<Vec<SubmodulePair>> {
        let full = SubmodulePair::full(self.module);
        let top = self.eval(&full)?;
        if !top.indecomposable || self.module.len() < 2 {
            return Err(Error::Precondition("GR submodules need an indecomposable, non-simple module".into()));
        }
        let target = top.measure.truncated();
        let mut out = Vec::new();
        for s in self.module.enumerate_submodules(self.caps.submodule_length)? {
            if s.is_empty() || s.len() == self.module.len() {
                continue;
            }
            let node = self.eval(&s)?;
            if node.indecomposable && node.measure == target {
                out.push(s);
            }
        }
        Ok(out)
    }

    /// Whether `x ⊂ M` is a GR inclusion: `x` proper and indecomposable with
    /// `μ(M) = μ(x) ∪ {|M|}`.
    pub fn is_gr_inclusion(&mut self, x: &SubmodulePair) -> Result<bool> {
        if !x.is_closed_in(self.module) {
            return Err(Error::Precondition("not a submodule".into()));
        }
        if x.is_empty() || x.len() >= self.module.len() || !self.is_indecomposable(x)? {
            return Ok(false);
        }
        let whole = self.measure()?;
        let sub = self.measure_of(x)?;
        Ok(sub.extend(self.module.len() as u32).is_ok_and(|e| e == whole))
    }

    /// A chain of indecomposable submodules whose lengths are exactly `μ(M)`,
    /// smallest first.
    pub fn witness_chain(&mut self) -> Result<Vec<SubmodulePair>> {
        let mut cur = SubmodulePair::full(self.module);
        let mut target = self.measure_of(&cur)?;
        let mut chain = Vec::new();
        while !target.is_empty() {
            let node = self.eval(&cur)?;
            debug_assert_eq!(node.measure, target);
            if node.indecomposable {
                chain.push(cur.clone());
                target = target.truncated();
                if target.is_empty() {
                    break;
                }
            }
            let mut next = None;
            for y in self.module.maximal_submodules(&cur) {
                if self.measure_of(&y)? == target {
                    next = Some(y);
                    break;
                }
            }
            cur = next.expect("the maximum is attained on a colength-one submodule");
        }
        chain.reverse();
        Ok(chain)
    }
}

/// `μ(M)`.
pub fn gr_measure(m: &KroneckerModule, caps: &Caps) -> Result<GrMeasure> {
    Lattice::new(m, caps)?.measure()
}
