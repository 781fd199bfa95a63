//! Frobenius-norm NMF with Lee–Seung multiplicative updates.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::TopicModel;
use crate::dtm::DocTermMatrix;
use crate::error::{Error, Result};

/// Added to every update denominator.
pub const DENOMINATOR_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NmfInit {
    #[default]
    Nndsvd,
    Random,
}

impl std::str::FromStr for NmfInit {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "nndsvd" => Ok(NmfInit::Nndsvd),
            "random" => Ok(NmfInit::Random),
            _ => Err(format!("unknown init `{s}` (expected nndsvd or random)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NmfConfig {
    pub k: usize,
    pub seed: u64,
    pub max_iter: usize,
    /// Stop once the relative objective decrease of one iteration drops below this.
    pub tol: f64,
    pub init: NmfInit,
}

impl Default for NmfConfig {
    fn default() -> Self {
        NmfConfig {
            k: 10,
            seed: 42,
            max_iter: 200,
            tol: 1e-4,
            init: NmfInit::Nndsvd,
        }
    }
}

/// `V ≈ W·H` with `V` laid out terms × documents.
#[derive(Debug, Clone, PartialEq)]
pub struct NmfModel {
    /// terms × topics
    pub w: DMatrix<f64>,
    /// topics × documents
    pub h: DMatrix<f64>,
    pub k: usize,
    /// `‖V − WH‖_F` at initialization followed by one entry per iteration.
    pub objective_trace: Vec<f64>,
    pub seed: u64,
    pub iterations: usize,
}

impl NmfModel {
    pub fn final_objective(&self) -> f64 {
        *self.objective_trace.last().expect("trace holds the initial objective")
    }

    pub fn reconstruction(&self) -> DMatrix<f64> {
        &self.w * &self.h
    }
}

impl TopicModel for NmfModel {
    fn n_topics(&self) -> usize {
        self.k
    }

    fn n_terms(&self) -> usize {
        self.w.nrows()
    }

    fn term_weights(&self, topic: usize) -> Vec<f64> {
        self.w.column(topic).iter().copied().collect()
    }
}

/// Dense terms × documents copy of a document-term matrix.
pub fn terms_by_documents(m: &DocTermMatrix) -> DMatrix<f64> {
    let mut x = DMatrix::zeros(m.n_terms(), m.n_docs());
    for (d, row) in m.rows().enumerate() {
        for &(t, v) in row {
            x[(t, d)] = v;
        }
    }
    x
}

/// Fits NMF to a document-term matrix (counts or TF-IDF weights).
pub fn nmf_fit(v: &DocTermMatrix, config: &NmfConfig) -> Result<NmfModel> {
    nmf_fit_dense(&terms_by_documents(v), config)
}

/// Fits NMF to a dense nonnegative matrix.
pub fn nmf_fit_dense(x: &DMatrix<f64>, config: &NmfConfig) -> Result<NmfModel> {
    let k = config.k;
    let limit = x.nrows().min(x.ncols());
    if k == 0 || k > limit {
        return Err(Error::InvalidParameter(format!(
            "k = {k} must be between 1 and {limit}"
        )));
    }
    if x.iter().any(|&v| !v.is_finite() || v < 0.0) {
        return Err(Error::InvalidParameter(
            "NMF input must be finite and nonnegative".into(),
        ));
    }
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::InvalidParameter(
            "NMF input has no nonzero entries".into(),
        ));
    }
    if config.tol.is_nan() || config.tol < 0.0 {
        return Err(Error::InvalidParameter(format!("tol = {}", config.tol)));
    }

    let (mut w, mut h) = match config.init {
        NmfInit::Nndsvd => nndsvd(x, k),
        NmfInit::Random => random_init(x, k, config.seed),
    };

    let mut trace = Vec::with_capacity(config.max_iter + 1);
    trace.push(frobenius_residual(x, &w, &h));
    let mut iterations = 0;

    for _ in 0..config.max_iter {
        // H ← H ∘ (WᵀV) ⊘ (WᵀW H + ε)
        let numer = w.tr_mul(x);
        let denom = w.tr_mul(&w) * &h;
        h.zip_zip_apply(&numer, &denom, |hv, n, d| {
            *hv *= n / (d + DENOMINATOR_EPSILON)
        });

        // W ← W ∘ (V Hᵀ) ⊘ (W H Hᵀ + ε)
        let numer = x * h.transpose();
        let denom = &w * (&h * h.transpose());
        w.zip_zip_apply(&numer, &denom, |wv, n, d| {
            *wv *= n / (d + DENOMINATOR_EPSILON)
        });

        debug_assert!(w.iter().chain(h.iter()).all(|&v| v >= 0.0));

        iterations += 1;
        let prev = *trace.last().unwrap();
        let obj = frobenius_residual(x, &w, &h);
        trace.push(obj);
        if prev == 0.0 || (prev - obj) / prev < config.tol {
            break;
        }
    }

    Ok(NmfModel {
        w,
        h,
        k,
        objective_trace: trace,
        seed: config.seed,
        iterations,
    })
}

pub fn frobenius_residual(x: &DMatrix<f64>, w: &DMatrix<f64>, h: &DMatrix<f64>) -> f64 {
    (x - w * h).norm()
}

fn random_init(x: &DMatrix<f64>, k: usize, seed: u64) -> (DMatrix<f64>, DMatrix<f64>) {
    let mean = x.mean();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = DMatrix::from_fn(x.nrows(), k, |_, _| rng.random::<f64>() * mean);
    let h = DMatrix::from_fn(k, x.ncols(), |_, _| rng.random::<f64>() * mean);
    (w, h)
}

/// Nonnegative double SVD initialization.
///
/// The leading singular pair seeds the first factor directly (its vectors can
/// be taken entrywise-absolute). Each later pair is split into positive and
/// negative parts, and whichever part carries more mass seeds the factor.
/// Exact zeros are then lifted to `1e-6 · mean(V)` so multiplicative updates
/// can still move them.
pub fn nndsvd(x: &DMatrix<f64>, k: usize) -> (DMatrix<f64>, DMatrix<f64>) {
    let svd = x.clone().svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let vt = svd.v_t.expect("right singular vectors requested");
    let s = svd.singular_values;

    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| s[b].total_cmp(&s[a]).then(a.cmp(&b)));

    let (m, n) = x.shape();
    let mut w = DMatrix::zeros(m, k);
    let mut h = DMatrix::zeros(k, n);

    for (j, &idx) in order.iter().take(k).enumerate() {
        let sigma = s[idx];
        let ucol: Vec<f64> = u.column(idx).iter().copied().collect();
        let vrow: Vec<f64> = vt.row(idx).iter().copied().collect();

        if j == 0 {
            let scale = sigma.sqrt();
            for i in 0..m {
                w[(i, 0)] = scale * ucol[i].abs();
            }
            for i in 0..n {
                h[(0, i)] = scale * vrow[i].abs();
            }
            continue;
        }

        let (up, un) = split_signs(&ucol);
        let (vp, vn) = split_signs(&vrow);
        let (nup, nun, nvp, nvn) = (norm(&up), norm(&un), norm(&vp), norm(&vn));
        let (mp, mn) = (nup * nvp, nun * nvn);

        let (uu, vv, unorm, vnorm, mass) = if mp > mn {
            (up, vp, nup, nvp, mp)
        } else {
            (un, vn, nun, nvn, mn)
        };
        if mass == 0.0 {
            continue;
        }
        let scale = (sigma * mass).sqrt();
        for i in 0..m {
            w[(i, j)] = scale * uu[i] / unorm;
        }
        for i in 0..n {
            h[(j, i)] = scale * vv[i] / vnorm;
        }
    }

    let fill = 1e-6 * x.mean();
    w.apply(|v| {
        if *v == 0.0 {
            *v = fill
        }
    });
    h.apply(|v| {
        if *v == 0.0 {
            *v = fill
        }
    });
    (w, h)
}

fn split_signs(v: &[f64]) -> (Vec<f64>, Vec<f64>) {
    (
        v.iter().map(|&x| x.max(0.0)).collect(),
        v.iter().map(|&x| (-x).max(0.0)).collect(),
    )
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
