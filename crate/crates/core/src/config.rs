use crate::error::{Error, Result};

/// Every tolerance and size limit used by the library.
///
/// Relative tolerances are scaled by `max(1, ‖A‖_F)` of the matrix they apply to.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    /// Eigenvalue clustering radius for a single eigenvalue (relative).
    pub cluster_tol: f64,
    /// Singular values below `rank_tol * σ_max` count as zero.
    pub rank_tol: f64,
    /// Absolute slack on every refuting inequality.
    pub verdict_margin: f64,
    /// Distance to a pole below which evaluation is refused.
    pub pole_tol: f64,
    /// Eigenvalues with modulus `>= 1 - eps_boundary` are rejected as not in the disc.
    pub eps_boundary: f64,
    /// Minimal separation between interpolation nodes.
    pub node_tol: f64,
    /// Endpoint tolerance of the isospectral path (relative to `‖A‖_F`).
    pub path_tol: f64,
    /// Slack in `ρ(F(ζ)) <= |ζ|`.
    pub schwarz_tol: f64,
    /// Residual scale accepted for computed polynomial roots.
    pub root_tol: f64,
    /// Least-squares residual, relative to `|B|·|B^{k-1}|` for `B = A − (tr A / n) I`, that
    /// declares `{I, A, …, A^k}` dependent; `dep_tol / 20` is also added as an absolute floor.
    pub dep_tol: f64,
    /// Relative size below which a Taylor coefficient counts as vanishing.
    pub ord_tol: f64,
    /// Coefficients of a nilpotent combination below this are treated as zero.
    pub zero_tol: f64,
    /// `||u| - 1|` accepted for a unimodular rotation candidate.
    pub unimodular_tol: f64,
    pub oracle_max_n: usize,
    /// Samples per contour for path and grid based checks.
    pub grid_points: usize,
    pub max_n: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            cluster_tol: 1e-8,
            rank_tol: 1e-10,
            verdict_margin: 1e-7,
            pole_tol: 1e-10,
            eps_boundary: 1e-9,
            node_tol: 1e-10,
            path_tol: 1e-8,
            schwarz_tol: 1e-8,
            root_tol: 1e-8,
            dep_tol: 1e-10,
            ord_tol: 1e-8,
            zero_tol: 1e-12,
            unimodular_tol: 1e-6,
            oracle_max_n: 12,
            grid_points: 64,
            max_n: 64,
            seed: 0,
        }
    }
}

impl Config {
    /// Checks that every tolerance lies in `(0, 1e-2)` and sizes are positive.
    pub fn validate(&self) -> Result<()> {
        let tols = [
            ("cluster_tol", self.cluster_tol),
            ("rank_tol", self.rank_tol),
            ("verdict_margin", self.verdict_margin),
            ("pole_tol", self.pole_tol),
            ("eps_boundary", self.eps_boundary),
            ("node_tol", self.node_tol),
            ("path_tol", self.path_tol),
            ("schwarz_tol", self.schwarz_tol),
            ("root_tol", self.root_tol),
            ("dep_tol", self.dep_tol),
            ("ord_tol", self.ord_tol),
            ("zero_tol", self.zero_tol),
            ("unimodular_tol", self.unimodular_tol),
        ];
        for (name, v) in tols {
            if !(v > 0.0 && v < 1e-2) {
                return Err(Error::InvalidConfig { field: name });
            }
        }
        if self.oracle_max_n == 0 {
            return Err(Error::InvalidConfig { field: "oracle_max_n" });
        }
        if self.grid_points == 0 {
            return Err(Error::InvalidConfig { field: "grid_points" });
        }
        if self.max_n == 0 {
            return Err(Error::InvalidConfig { field: "max_n" });
        }
        Ok(())
    }

    /// Clustering radius for a group of `k` computed eigenvalues.
    ///
    /// A size-`b` Jordan block perturbed by `δ` splits into eigenvalues at distance
    /// `~δ^(1/b)`, so the admissible radius grows with the group size.
    pub fn cluster_radius(&self, k: usize, scale: f64) -> f64 {
        #[allow(unused_imports)]
        use num_traits::Float;
        let k = k.max(1) as f64;
        self.cluster_tol.powf(1.0 / k) * scale.max(1.0)
    }
}
