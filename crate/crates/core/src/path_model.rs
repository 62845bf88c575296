//! Path-model representation of `TL_n(d)` at `d = 2cos(π/k)`.
//!
//! Basis vectors are walks of length `n` on the path graph `G_k` (vertices
//! `1..k-1`) starting at vertex 1. A walk is a bit string, bit 1 stepping
//! right and bit 0 stepping left. Each generator `E_i` acts on bits `i, i+1`
//! and preserves the endpoint, so every operator here is stored one dense
//! block per endpoint sector.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64;
use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{Error, Result};

/// How the unit-modulus `A` is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AChoice {
    /// `A = i e^{-iπ/(2k)}`, the candidate satisfying `-A^2 - A^{-2} = d` and
    /// `A^{-4} = e^{2πi/k}`.
    #[default]
    Constrained,
    /// `A = e^{-iπ/(2k)}`. Gives `-A^2 - A^{-2} = -d`; the braid images are
    /// then not unitary. Kept for comparison only.
    Literal,
    /// Complex conjugate of the constrained choice; evaluates the mirror image.
    Conjugate,
}

#[derive(Clone, Debug, Serialize)]
pub struct ACandidate {
    pub label: &'static str,
    pub value: Complex64,
    /// `|-A^2 - A^{-2} - 2cos(π/k)| <= 1e-12`
    pub satisfies_loop_value: bool,
    /// `|A^{-4} - e^{2πi/k}| <= 1e-12`
    pub matches_root_of_unity: bool,
}

/// The eight candidates `±e^{±iπ/2k}`, `±i e^{±iπ/2k}` with their checks.
pub fn a_candidates(k: usize) -> Vec<ACandidate> {
    let theta = PI / (2.0 * k as f64);
    let d = 2.0 * (PI / k as f64).cos();
    let t = Complex64::from_polar(1.0, 2.0 * PI / k as f64);
    let i = Complex64::i();
    let raw: [(&'static str, Complex64); 8] = [
        ("e^{-iπ/2k}", Complex64::from_polar(1.0, -theta)),
        ("-e^{-iπ/2k}", -Complex64::from_polar(1.0, -theta)),
        ("e^{iπ/2k}", Complex64::from_polar(1.0, theta)),
        ("-e^{iπ/2k}", -Complex64::from_polar(1.0, theta)),
        ("i e^{-iπ/2k}", i * Complex64::from_polar(1.0, -theta)),
        ("-i e^{-iπ/2k}", -i * Complex64::from_polar(1.0, -theta)),
        ("i e^{iπ/2k}", i * Complex64::from_polar(1.0, theta)),
        ("-i e^{iπ/2k}", -i * Complex64::from_polar(1.0, theta)),
    ];
    raw.into_iter()
        .map(|(label, a)| ACandidate {
            label,
            value: a,
            satisfies_loop_value: (loop_value_of(a) - d).norm() <= 1e-12,
            matches_root_of_unity: (a.powi(-4) - t).norm() <= 1e-12,
        })
        .collect()
}

/// `-A^2 - A^{-2}`.
pub fn loop_value_of(a: Complex64) -> Complex64 {
    -a * a - (a * a).inv()
}

/// The first candidate satisfying both the loop-value constraint and
/// `A^{-4} = e^{2πi/k}`.
pub fn choose_a(k: usize) -> Result<Complex64> {
    if k < 3 {
        return Err(Error::InvalidK(k));
    }
    let c = a_candidates(k)
        .into_iter()
        .find(|c| c.satisfies_loop_value && c.matches_root_of_unity)
        .expect("i e^{-iπ/2k} always satisfies both constraints");
    Ok(c.value)
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelParams {
    pub k: usize,
    pub n: usize,
    pub d: f64,
    pub a: Complex64,
    pub a_choice: AChoice,
    /// `lambda[l] = sin(πl/k)` for `0 <= l <= k`, with `lambda[0] = lambda[k] = 0`.
    pub lambda: Vec<f64>,
}

impl ModelParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        Self::with_choice(n, k, AChoice::Constrained)
    }

    pub fn with_choice(n: usize, k: usize, a_choice: AChoice) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidK(k));
        }
        if n == 0 {
            return Err(Error::InvalidStrands(n));
        }
        let constrained = choose_a(k)?;
        let a = match a_choice {
            AChoice::Constrained => constrained,
            AChoice::Conjugate => constrained.conj(),
            AChoice::Literal => Complex64::from_polar(1.0, -PI / (2.0 * k as f64)),
        };
        let mut lambda: Vec<f64> = (0..=k).map(|l| (PI * l as f64 / k as f64).sin()).collect();
        lambda[0] = 0.0;
        lambda[k] = 0.0;
        Ok(ModelParams {
            k,
            n,
            d: 2.0 * (PI / k as f64).cos(),
            a,
            a_choice,
            lambda,
        })
    }
}

/// `‖M_k λ - d λ‖∞` for the adjacency matrix of `G_k`.
pub fn adjacency_eigen_check(k: usize) -> Result<f64> {
    let p = ModelParams::new(1, k)?;
    let size = k - 1;
    let mut m = Array2::<f64>::zeros((size, size));
    for r in 0..size.saturating_sub(1) {
        m[(r, r + 1)] = 1.0;
        m[(r + 1, r)] = 1.0;
    }
    let v = ndarray::Array1::from_iter(p.lambda[1..k].iter().copied());
    let res = m.dot(&v) - &v * p.d;
    Ok(res.iter().fold(0.0f64, |acc, x| acc.max(x.abs())))
}

/// A walk encoded with bit `i` (1-based) at position `n - i`, so numeric order
/// is lexicographic order of the bit string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path(pub u64);

impl Path {
    pub fn bit(self, n: usize, i: usize) -> u8 {
        ((self.0 >> (n - i)) & 1) as u8
    }

    fn set_bits(self, n: usize, i: usize, first: u8, second: u8) -> Path {
        let mask = (1u64 << (n - i)) | (1u64 << (n - i - 1));
        let bits = ((first as u64) << (n - i)) | ((second as u64) << (n - i - 1));
        Path((self.0 & !mask) | bits)
    }

    /// Vertex reached after the first `len` steps from vertex 1.
    pub fn vertex_after(self, n: usize, len: usize) -> i64 {
        (1..=len).fold(1i64, |v, i| if self.bit(n, i) == 1 { v + 1 } else { v - 1 })
    }

    pub fn to_bit_string(self, n: usize) -> String {
        (1..=n)
            .map(|i| if self.bit(n, i) == 1 { '1' } else { '0' })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct PathBasis {
    pub params: ModelParams,
    paths: Vec<Path>,
    sectors: BTreeMap<usize, Vec<Path>>,
    index: HashMap<Path, (usize, usize)>,
}

impl PathBasis {
    /// All admissible walks of length `n` from vertex 1, grouped by endpoint.
    pub fn enumerate(params: ModelParams) -> PathBasis {
        let (n, k) = (params.n, params.k);
        let mut paths = Vec::new();
        let mut stack = vec![(0usize, 1usize, 0u64)];
        while let Some((len, v, bits)) = stack.pop() {
            if len == n {
                paths.push(Path(bits));
                continue;
            }
            // push right first so left (bit 0) is explored first
            if v < k - 1 {
                stack.push((len + 1, v + 1, (bits << 1) | 1));
            }
            if v > 1 {
                stack.push((len + 1, v - 1, bits << 1));
            }
        }
        let mut sectors: BTreeMap<usize, Vec<Path>> = BTreeMap::new();
        for &p in &paths {
            sectors
                .entry(p.vertex_after(n, n) as usize)
                .or_default()
                .push(p);
        }
        let mut index = HashMap::with_capacity(paths.len());
        for (&m, ps) in &sectors {
            for (j, &p) in ps.iter().enumerate() {
                index.insert(p, (m, j));
            }
        }
        PathBasis {
            params,
            paths,
            sectors,
            index,
        }
    }

    pub fn new(n: usize, k: usize) -> Result<PathBasis> {
        Ok(Self::enumerate(ModelParams::new(n, k)?))
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn k(&self) -> usize {
        self.params.k
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    /// Nonempty sectors in increasing endpoint order.
    pub fn sectors(&self) -> impl Iterator<Item = (usize, &[Path])> {
        self.sectors.iter().map(|(&m, ps)| (m, ps.as_slice()))
    }

    pub fn sector(&self, m: usize) -> Option<&[Path]> {
        self.sectors.get(&m).map(|v| v.as_slice())
    }

    pub fn sector_dims(&self) -> BTreeMap<usize, usize> {
        self.sectors.iter().map(|(&m, ps)| (m, ps.len())).collect()
    }

    pub fn sector_of(&self, p: Path) -> Option<usize> {
        self.index.get(&p).map(|&(m, _)| m)
    }

    /// `(sector, index within sector)` of a path.
    pub fn locate(&self, p: Path) -> Option<(usize, usize)> {
        self.index.get(&p).copied()
    }

    /// `N = Σ_m λ_m dim H_{n,k,m}`.
    pub fn normalization(&self) -> f64 {
        self.sectors
            .iter()
            .map(|(&m, ps)| self.params.lambda[m] * ps.len() as f64)
            .sum()
    }

    fn check_generator(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.n() {
            return Err(Error::GeneratorOutOfRange {
                index: i,
                strands: self.n(),
            });
        }
        Ok(())
    }

    /// Nonzero entries `(target, coefficient)` of `Φ_i |p⟩`.
    pub fn phi_action(&self, i: usize, p: Path) -> Vec<(Path, f64)> {
        let n = self.n();
        let lambda = &self.params.lambda;
        let e = p.vertex_after(n, i - 1) as usize;
        let (lo, mid, hi) = (
            lambda[e - 1],
            lambda[e],
            lambda.get(e + 1).copied().unwrap_or(0.0),
        );
        let cross = (lo * hi).sqrt() / mid;
        let mut out = Vec::with_capacity(2);
        match (p.bit(n, i), p.bit(n, i + 1)) {
            (0, 1) => {
                out.push((p, lo / mid));
                if cross != 0.0 {
                    out.push((p.set_bits(n, i, 1, 0), cross));
                }
            }
            (1, 0) => {
                if cross != 0.0 {
                    out.push((p.set_bits(n, i, 0, 1), cross));
                }
                out.push((p, hi / mid));
            }
            _ => {}
        }
        out.retain(|&(_, c)| c != 0.0);
        out
    }

    /// `Φ_i` restricted to sector `m`.
    pub fn phi_sector(&self, i: usize, m: usize) -> Result<SectorOperator> {
        self.check_generator(i)?;
        let paths = self.sector(m).ok_or(Error::EmptySector(m))?;
        let dim = paths.len();
        let mut mat = Array2::<Complex64>::zeros((dim, dim));
        for (col, &p) in paths.iter().enumerate() {
            for (q, c) in self.phi_action(i, p) {
                let (mq, row) = self
                    .locate(q)
                    .expect("Φ_i maps admissible paths to admissible paths");
                debug_assert_eq!(mq, m);
                mat[(row, col)] = Complex64::new(c, 0.0);
            }
        }
        Ok(SectorOperator { m, matrix: mat })
    }

    /// `Φ_i` as one block per nonempty sector.
    pub fn phi_generator(&self, i: usize) -> Result<Vec<SectorOperator>> {
        self.check_generator(i)?;
        self.sectors
            .keys()
            .map(|&m| self.phi_sector(i, m))
            .collect()
    }

    /// `Φ_i` on the full space in the order of [`PathBasis::paths`]; cross-sector
    /// entries are whatever the defining formula produces.
    pub fn phi_full(&self, i: usize) -> Result<Array2<f64>> {
        self.check_generator(i)?;
        let pos: HashMap<Path, usize> = self
            .paths
            .iter()
            .enumerate()
            .map(|(j, &p)| (p, j))
            .collect();
        let dim = self.paths.len();
        let mut mat = Array2::<f64>::zeros((dim, dim));
        for (col, &p) in self.paths.iter().enumerate() {
            for (q, c) in self.phi_action(i, p) {
                mat[(pos[&q], col)] = c;
            }
        }
        Ok(mat)
    }

    /// `A Φ_i + A^{-1} I` (exponent +1) or `A^{-1} Φ_i + A I` (exponent -1)
    /// on sector `m`.
    pub fn braid_gen_unitary(&self, i: usize, exponent: i8, m: usize) -> Result<SectorOperator> {
        let phi = self.phi_sector(i, m)?;
        let a = if exponent >= 0 {
            self.params.a
        } else {
            self.params.a.inv()
        };
        let dim = phi.dim();
        let matrix = phi.matrix.mapv(|x| x * a) + Array2::<Complex64>::eye(dim) * a.inv();
        Ok(SectorOperator { m, matrix })
    }

    /// Ordered product of the letter unitaries of `beta` on sector `m`.
    pub fn global_gate(&self, beta: &BraidWord, m: usize) -> Result<SectorOperator> {
        if beta.strands() != self.n() {
            return Err(Error::StrandMismatch {
                left: beta.strands(),
                right: self.n(),
            });
        }
        let dim = self.sector(m).ok_or(Error::EmptySector(m))?.len();
        let mut gens: HashMap<(usize, i8), SectorOperator> = HashMap::new();
        let mut acc = Array2::<Complex64>::eye(dim);
        for l in beta.letters() {
            let u = match gens.entry((l.index, l.exponent)) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => e.insert(self.braid_gen_unitary(l.index, l.exponent, m)?),
            };
            acc = acc.dot(&u.matrix);
        }
        Ok(SectorOperator { m, matrix: acc })
    }
}

/// A dense complex operator on one endpoint sector.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorOperator {
    pub m: usize,
    pub matrix: Array2<Complex64>,
}

impl SectorOperator {
    pub fn identity(m: usize, dim: usize) -> Self {
        SectorOperator {
            m,
            matrix: Array2::eye(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.diag().iter().sum()
    }

    pub fn dagger(&self) -> SectorOperator {
        SectorOperator {
            m: self.m,
            matrix: self.matrix.t().mapv(|x| x.conj()),
        }
    }

    pub fn mul(&self, other: &SectorOperator) -> SectorOperator {
        debug_assert_eq!(self.m, other.m);
        SectorOperator {
            m: self.m,
            matrix: self.matrix.dot(&other.matrix),
        }
    }

    /// `‖U U† - I‖` in the max-entry norm.
    pub fn unitarity_residual(&self) -> f64 {
        let prod = self.matrix.dot(&self.matrix.t().mapv(|x| x.conj()));
        max_abs_diff(&prod, &Array2::eye(self.dim()))
    }
}

/// Largest entrywise `|a - b|`.
pub fn max_abs_diff(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .fold(0.0f64, |acc, (x, y)| acc.max((x - y).norm()))
}
