/// Resource caps shared by the exponential constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `q` for which subsets of `[q]` are enumerated.
    pub max_subset_universe: usize,
    /// Largest generator count accepted by lcm lattices and Betti tables.
    pub max_lattice_generators: usize,
    /// Largest number of faces in one homology slice.
    pub max_slice_faces: usize,
    /// Largest number of power generators `C(q+r-1, r)`.
    pub max_power_generators: usize,
    /// Element cap for closure computations; `None` means `2·q·2^q`.
    pub closure_cap: Option<usize>,
    /// Worker threads for per-multidegree homology; `None` runs on the caller.
    pub threads: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_subset_universe: 20,
            max_lattice_generators: 14,
            max_slice_faces: 1 << 16,
            max_power_generators: 100_000,
            closure_cap: None,
            threads: None,
        }
    }
}
