/// Enumeration and search limits. Exceeding one is reported as an error,
/// never answered by a guess.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Longest module whose submodule lattice may be walked.
    pub submodule_length: usize,
    /// Largest `|End(M)|` scanned for a splitting endomorphism.
    pub idempotent_search: u64,
    /// Largest `|Hom(M,N)|` scanned for an isomorphism.
    pub hom_scan: u64,
    /// Largest number of normalized matrix tuples enumerated per dimension
    /// vector in an exhaustive scan.
    pub exhaustive_tuples: u64,
    /// Longest module handed to the brute-force chain oracle.
    pub oracle_length: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            submodule_length: 12,
            idempotent_search: 1 << 20,
            hom_scan: 1 << 20,
            exhaustive_tuples: 1 << 22,
            oracle_length: 5,
        }
    }
}
