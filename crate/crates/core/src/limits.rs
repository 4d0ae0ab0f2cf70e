/// Environment variable that overrides every enumeration cap at once.
pub const MAX_ENUM_ENV: &str = "HERMGRS_MAX_ENUM";

/// Caps on the exhaustive enumerations. A "none" or "no witness" answer is
/// only ever produced by a complete enumeration, so exceeding a cap is an
/// error rather than a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `q^{2k}` for which codewords are enumerated.
    pub max_codewords: u64,
    /// Largest `q^dim` of F_q-kernel combinations searched for a witness.
    pub max_kernel: u64,
    /// Largest number of `n`-subsets a classification run will visit.
    pub max_subsets: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_codewords: 1 << 20, max_kernel: 1 << 20, max_subsets: 10_000_000 }
    }
}

impl Limits {
    /// Defaults, with every cap replaced by `HERMGRS_MAX_ENUM` when it is set
    /// to a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) =
            std::env::var(MAX_ENUM_ENV).ok().and_then(|s| s.trim().parse::<u64>().ok()).filter(|&c| c > 0)
        {
            limits.max_codewords = cap;
            limits.max_kernel = cap;
            limits.max_subsets = cap;
        }
        limits
    }
}
