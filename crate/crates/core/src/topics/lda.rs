//! Latent Dirichlet allocation by collapsed Gibbs sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::TopicModel;
use crate::dtm::{DocTermMatrix, MatrixKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdaConfig {
    pub k: usize,
    /// Document-topic prior. `None` means `50 / k`.
    pub alpha: Option<f64>,
    /// Topic-word prior.
    pub beta: f64,
    /// Number of full sweeps over all tokens.
    pub iterations: usize,
    pub seed: u64,
}

impl Default for LdaConfig {
    fn default() -> Self {
        LdaConfig {
            k: 10,
            alpha: None,
            beta: 0.01,
            iterations: 1000,
            seed: 42,
        }
    }
}

impl LdaConfig {
    pub fn alpha(&self) -> f64 {
        self.alpha.unwrap_or(50.0 / self.k as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdaModel {
    /// topics × terms; each row sums to one.
    pub phi: Vec<Vec<f64>>,
    /// documents × topics; each row sums to one.
    pub theta: Vec<Vec<f64>>,
    pub alpha: f64,
    pub beta: f64,
    pub k: usize,
    pub seed: u64,
    pub iterations: usize,
}

impl TopicModel for LdaModel {
    fn n_topics(&self) -> usize {
        self.k
    }

    fn n_terms(&self) -> usize {
        self.phi.first().map_or(0, Vec::len)
    }

    fn term_weights(&self, topic: usize) -> Vec<f64> {
        self.phi[topic].clone()
    }
}

/// Sampler state: one topic assignment per token plus the count tables
/// derived from them.
#[derive(Debug, Clone)]
pub struct GibbsSampler {
    k: usize,
    n_terms: usize,
    alpha: f64,
    beta: f64,
    words: Vec<Vec<usize>>,
    assignments: Vec<Vec<usize>>,
    doc_topic: Vec<Vec<u32>>,
    // topic-major, k × n_terms
    topic_term: Vec<u32>,
    topic_total: Vec<u32>,
    rng: ChaCha8Rng,
    weights: Vec<f64>,
}

impl GibbsSampler {
    /// Expands counts into token lists and assigns topics uniformly at random.
    pub fn new(counts: &DocTermMatrix, config: &LdaConfig) -> Result<Self> {
        if counts.kind() != MatrixKind::Counts {
            return Err(Error::InvalidParameter(
                "LDA needs a COUNTS matrix".into(),
            ));
        }
        let k = config.k;
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        let alpha = config.alpha();
        if !(alpha > 0.0 && config.beta > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "priors must be positive (alpha = {alpha}, beta = {})",
                config.beta
            )));
        }

        let words: Vec<Vec<usize>> = counts
            .rows()
            .map(|row| {
                row.iter()
                    .flat_map(|&(t, c)| std::iter::repeat_n(t, c as usize))
                    .collect()
            })
            .collect();
        if words.iter().all(Vec::is_empty) {
            return Err(Error::EmptyCorpus);
        }

        let n_terms = counts.n_terms();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut doc_topic = vec![vec![0u32; k]; words.len()];
        let mut topic_term = vec![0u32; k * n_terms];
        let mut topic_total = vec![0u32; k];
        let assignments = words
            .iter()
            .enumerate()
            .map(|(d, doc)| {
                doc.iter()
                    .map(|&w| {
                        let z = rng.random_range(0..k);
                        doc_topic[d][z] += 1;
                        topic_term[z * n_terms + w] += 1;
                        topic_total[z] += 1;
                        z
                    })
                    .collect()
            })
            .collect();

        Ok(GibbsSampler {
            k,
            n_terms,
            alpha,
            beta: config.beta,
            words,
            assignments,
            doc_topic,
            topic_term,
            topic_total,
            rng,
            weights: vec![0.0; k],
        })
    }

    /// Resamples every token's topic once, in document order.
    pub fn sweep(&mut self) {
        let vbeta = self.n_terms as f64 * self.beta;
        for d in 0..self.words.len() {
            for i in 0..self.words[d].len() {
                let w = self.words[d][i];
                let old = self.assignments[d][i];
                self.doc_topic[d][old] -= 1;
                self.topic_term[old * self.n_terms + w] -= 1;
                self.topic_total[old] -= 1;

                let mut total = 0.0;
                for z in 0..self.k {
                    let p = (self.doc_topic[d][z] as f64 + self.alpha)
                        * (self.topic_term[z * self.n_terms + w] as f64 + self.beta)
                        / (self.topic_total[z] as f64 + vbeta);
                    total += p;
                    self.weights[z] = total;
                }
                let u = self.rng.random::<f64>() * total;
                let new = self
                    .weights
                    .iter()
                    .position(|&c| u < c)
                    .unwrap_or(self.k - 1);

                self.assignments[d][i] = new;
                self.doc_topic[d][new] += 1;
                self.topic_term[new * self.n_terms + w] += 1;
                self.topic_total[new] += 1;
            }
        }
        debug_assert_eq!(self.assignment_total(), self.token_total());
    }

    pub fn token_total(&self) -> usize {
        self.words.iter().map(Vec::len).sum()
    }

    /// Tokens accounted for by the topic totals table.
    pub fn assignment_total(&self) -> usize {
        self.topic_total.iter().map(|&c| c as usize).sum()
    }

    /// Checks that all three count tables agree with the assignments.
    pub fn tables_consistent(&self) -> bool {
        let n = self.token_total();
        let dt: usize = self
            .doc_topic
            .iter()
            .flatten()
            .map(|&c| c as usize)
            .sum();
        let tt: usize = self.topic_term.iter().map(|&c| c as usize).sum();
        let per_doc_ok = self
            .doc_topic
            .iter()
            .zip(&self.words)
            .all(|(row, doc)| row.iter().map(|&c| c as usize).sum::<usize>() == doc.len());
        dt == n && tt == n && self.assignment_total() == n && per_doc_ok
    }

    /// Point estimates from the current state.
    pub fn estimate(&self, seed: u64, iterations: usize) -> LdaModel {
        let vbeta = self.n_terms as f64 * self.beta;
        let phi = (0..self.k)
            .map(|z| {
                let denom = self.topic_total[z] as f64 + vbeta;
                (0..self.n_terms)
                    .map(|w| (self.topic_term[z * self.n_terms + w] as f64 + self.beta) / denom)
                    .collect()
            })
            .collect();
        let kalpha = self.k as f64 * self.alpha;
        let theta = self
            .doc_topic
            .iter()
            .zip(&self.words)
            .map(|(row, doc)| {
                let denom = doc.len() as f64 + kalpha;
                row.iter()
                    .map(|&c| (c as f64 + self.alpha) / denom)
                    .collect()
            })
            .collect();
        LdaModel {
            phi,
            theta,
            alpha: self.alpha,
            beta: self.beta,
            k: self.k,
            seed,
            iterations,
        }
    }
}

/// Runs `config.iterations` sweeps and estimates phi and theta from the
/// final state.
pub fn lda_fit(counts: &DocTermMatrix, config: &LdaConfig) -> Result<LdaModel> {
    let mut sampler = GibbsSampler::new(counts, config)?;
    for _ in 0..config.iterations {
        sampler.sweep();
    }
    Ok(sampler.estimate(config.seed, config.iterations))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(rows: Vec<Vec<(usize, f64)>>, n_terms: usize) -> DocTermMatrix {
        let ids = (0..rows.len()).map(|i| format!("d{i}")).collect();
        DocTermMatrix::from_rows(MatrixKind::Counts, n_terms, ids, rows).unwrap()
    }

    #[test]
    fn single_topic_degenerates() {
        let m = counts(vec![vec![(0, 3.0), (1, 1.0)], vec![(1, 2.0), (2, 4.0)]], 3);
        let cfg = LdaConfig { k: 1, iterations: 5, ..Default::default() };
        let model = lda_fit(&m, &cfg).unwrap();
        for row in &model.theta {
            assert_eq!(row, &vec![1.0]);
        }
        // phi ∝ corpus term counts + beta
        let totals = [3.0, 3.0, 4.0];
        let denom = 10.0 + 3.0 * cfg.beta;
        for (p, c) in model.phi[0].iter().zip(totals) {
            assert!((p - (c + cfg.beta) / denom).abs() < 1e-15);
        }
    }

    #[test]
    fn rows_are_distributions() {
        let m = counts(
            vec![vec![(0, 2.0), (3, 1.0)], vec![], vec![(1, 5.0), (2, 1.0), (3, 1.0)]],
            4,
        );
        let model = lda_fit(&m, &LdaConfig { k: 3, iterations: 20, ..Default::default() }).unwrap();
        for row in model.phi.iter().chain(&model.theta) {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            assert!(row.iter().all(|&p| p >= 0.0));
        }
    }

    #[test]
    fn tables_stay_consistent() {
        let m = counts(vec![vec![(0, 4.0), (1, 2.0)], vec![(1, 1.0), (2, 3.0)]], 3);
        let mut s = GibbsSampler::new(&m, &LdaConfig { k: 2, ..Default::default() }).unwrap();
        for _ in 0..50 {
            s.sweep();
            assert!(s.tables_consistent());
            assert_eq!(s.assignment_total(), 10);
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let m = counts(vec![vec![(0, 4.0), (1, 2.0)], vec![(1, 1.0), (2, 3.0)]], 3);
        let cfg = LdaConfig { k: 2, iterations: 30, seed: 9, ..Default::default() };
        assert_eq!(lda_fit(&m, &cfg).unwrap(), lda_fit(&m, &cfg).unwrap());
    }

    #[test]
    fn errors() {
        let m = counts(vec![vec![(0, 1.0)]], 1);
        assert!(lda_fit(&m, &LdaConfig { k: 0, ..Default::default() }).is_err());
        let empty = counts(vec![vec![]], 1);
        assert!(matches!(
            lda_fit(&empty, &LdaConfig::default()),
            Err(Error::EmptyCorpus)
        ));
    }
}
