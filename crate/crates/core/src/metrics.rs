//! Generalized clustering coefficients, the Milgram ratio and separation
//! numbers.
//!
//! `q` always counts the nodes of a string, so a `q`-string has `q - 1`
//! edges and `S̄_q` is read off `R^(q-1)`.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::strings::{StringCounter, StringSpectrum};

/// `C(p)` together with a flag for a vanishing denominator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Clustering {
    pub p: usize,
    pub value: f64,
    /// Set when `R^(p-1)` sums to zero; `value` is then reported as 0.
    pub degenerate: bool,
}

/// Everything the Milgram analysis needs at one `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct MilgramProfile {
    pub q: usize,
    pub n_nodes: usize,
    pub s_bar: u64,
    /// `M_q = S̄_q / N`, exact.
    pub m_q: Ratio<u64>,
    /// `log10(M_q / N)`, `None` when `M_q = 0`.
    pub log_ratio: Option<f64>,
    /// `C(p)` for `3 ≤ p ≤ q`.
    pub c_values: BTreeMap<usize, Clustering>,
    /// `Σ_{p=3}^{q} C(p)`.
    pub x: f64,
    /// `log10 M_q`, `None` when `M_q = 0`.
    pub y: Option<f64>,
}

impl MilgramProfile {
    pub fn m_q_f64(&self) -> f64 {
        self.s_bar as f64 / self.n_nodes as f64
    }

    /// `M_q / N ≥ 1`.
    pub fn satisfies_milgram(&self) -> bool {
        milgram_satisfied(self.s_bar, self.n_nodes)
    }
}

fn milgram_satisfied(s_bar: u64, n_nodes: usize) -> bool {
    let n = n_nodes as u128;
    u128::from(s_bar) >= n * n
}

/// `C(p)` from a precomputed spectrum holding at least `R^p`.
pub fn clustering_from_spectrum(spectrum: &StringSpectrum, p: usize) -> Result<Clustering> {
    if p < 3 {
        return Err(Error::Range(format!(
            "clustering order p = {p} must be ≥ 3"
        )));
    }
    let stats = spectrum.statistics(p)?;
    let denominator = 2 * stats.s_bar;
    Ok(if denominator == 0 {
        Clustering {
            p,
            value: 0.0,
            degenerate: true,
        }
    } else {
        Clustering {
            p,
            value: stats.trace_r as f64 / denominator as f64,
            degenerate: false,
        }
    })
}

/// `C(p) = Tr R^p / Σ_ij R^(p-1)_ij`.
pub fn generalized_clustering(g: &Graph, p: usize) -> Result<Clustering> {
    if p < 3 {
        return Err(Error::Range(format!(
            "clustering order p = {p} must be ≥ 3"
        )));
    }
    let spectrum = StringCounter::default().spectrum(g, p)?;
    clustering_from_spectrum(&spectrum, p)
}

/// `C(3)` from adjacency powers alone: `Tr A³ / (Σ_ij A²_ij − Tr A²)`.
pub fn clustering_c3_closed_form(g: &Graph) -> Result<f64> {
    let a2 = g.adjacency_power(2)?;
    let a3 = a2.checked_mul(&g.adjacency_matrix())?;
    let denominator = a2.entry_sum()? - a2.trace()?;
    if denominator == 0 {
        return Err(Error::Degenerate(
            "no two-edge paths, C(3) undefined".into(),
        ));
    }
    Ok(a3.trace()? as f64 / denominator as f64)
}

/// `M_q = S̄_q / N` as an exact ratio.
pub fn milgram_ratio(g: &Graph, q: usize) -> Result<Ratio<u64>> {
    if q < 2 {
        return Err(Error::Range(format!("q = {q} must be ≥ 2")));
    }
    let spectrum = StringCounter::default().spectrum(g, q - 1)?;
    Ok(Ratio::new(spectrum.s_bar(q)?, g.n_nodes() as u64))
}

/// Smallest `q` in `2..=q_max` with `M_q / N ≥ 1`.
///
/// Counts one string length at a time and stops at the first qualifying
/// `q`, so dense graphs never pay for long strings they do not need.
pub fn separation_number(g: &Graph, q_max: usize) -> Result<Option<usize>> {
    separation_number_with(g, q_max, &StringCounter::default())
}

pub fn separation_number_with(
    g: &Graph,
    q_max: usize,
    counter: &StringCounter,
) -> Result<Option<usize>> {
    for q in 2..=q_max {
        let s_bar = counter.spectrum(g, q - 1)?.s_bar(q)?;
        if milgram_satisfied(s_bar, g.n_nodes()) {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

pub fn separation_from_spectrum(spectrum: &StringSpectrum, q_max: usize) -> Result<Option<usize>> {
    for q in 2..=q_max {
        if milgram_satisfied(spectrum.s_bar(q)?, spectrum.n_nodes()) {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// Profile at one `q ≥ 3`.
pub fn milgram_profile(g: &Graph, q: usize) -> Result<MilgramProfile> {
    if q < 3 {
        return Err(Error::Range(format!("profile needs q ≥ 3, got {q}")));
    }
    let spectrum = StringCounter::default().spectrum(g, q)?;
    profile_from_spectrum(&spectrum, q)
}

/// Profiles for every `q` in `2..=q_max` from one traversal.
pub fn milgram_profiles(
    g: &Graph,
    q_max: usize,
    counter: &StringCounter,
) -> Result<Vec<MilgramProfile>> {
    if q_max < 2 {
        return Err(Error::Range(format!("q_max = {q_max} must be ≥ 2")));
    }
    let spectrum = counter.spectrum(g, q_max)?;
    (2..=q_max)
        .map(|q| profile_from_spectrum(&spectrum, q))
        .collect()
}

/// Profile at `q ≥ 2` from a spectrum holding at least `R^q`. At `q = 2`
/// there are no clustering terms and `X = 0`.
pub fn profile_from_spectrum(spectrum: &StringSpectrum, q: usize) -> Result<MilgramProfile> {
    let n_nodes = spectrum.n_nodes();
    let s_bar = spectrum.s_bar(q)?;
    let mut c_values = BTreeMap::new();
    for p in 3..=q {
        let c = clustering_from_spectrum(spectrum, p)?;
        if c.value > 1.0 {
            log::debug!("C({p}) = {} exceeds 1", c.value);
        }
        c_values.insert(p, c);
    }
    let x = c_values.values().map(|c| c.value).sum();
    let m_q = s_bar as f64 / n_nodes as f64;
    let (y, log_ratio) = if s_bar == 0 {
        (None, None)
    } else {
        (Some(m_q.log10()), Some((m_q / n_nodes as f64).log10()))
    };
    Ok(MilgramProfile {
        q,
        n_nodes,
        s_bar,
        m_q: Ratio::new(s_bar, n_nodes as u64),
        log_ratio,
        c_values,
        x,
        y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_clustering() {
        let c = generalized_clustering(&Graph::complete(3), 3).unwrap();
        assert_eq!(c.value, 1.0);
        assert!(!c.degenerate);
        assert_eq!(clustering_c3_closed_form(&Graph::complete(3)).unwrap(), 1.0);
    }

    #[test]
    fn star_has_no_triangles() {
        let c = generalized_clustering(&Graph::star(4), 3).unwrap();
        assert_eq!(c.value, 0.0);
        assert!(!c.degenerate);
    }

    #[test]
    fn square_clustering() {
        assert_eq!(
            generalized_clustering(&Graph::cycle(4), 4).unwrap().value,
            1.0
        );
    }

    #[test]
    fn closed_form_edge_cases() {
        assert_eq!(clustering_c3_closed_form(&Graph::path(3)).unwrap(), 0.0);
        assert!(matches!(
            clustering_c3_closed_form(&Graph::empty(4)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn degenerate_flag() {
        let c = generalized_clustering(&Graph::empty(4), 4).unwrap();
        assert_eq!(c.value, 0.0);
        assert!(c.degenerate);
        assert!(generalized_clustering(&Graph::complete(3), 2).is_err());
    }

    #[test]
    fn milgram_ratios() {
        assert_eq!(
            milgram_ratio(&Graph::complete(4), 3).unwrap(),
            Ratio::from_integer(3)
        );
        assert_eq!(
            milgram_ratio(&Graph::empty(6), 4).unwrap(),
            Ratio::from_integer(0)
        );
        let k20 = Graph::complete(20);
        // 20 centers × C(19, 2) neighbor pairs = 3420 two-edge paths.
        assert_eq!(milgram_ratio(&k20, 3).unwrap(), Ratio::from_integer(171));
        assert_eq!(milgram_ratio(&k20, 2).unwrap(), Ratio::new(190, 20));
    }

    #[test]
    fn separation_numbers() {
        assert_eq!(separation_number(&Graph::complete(20), 7).unwrap(), Some(3));
        assert_eq!(separation_number(&Graph::empty(10), 7).unwrap(), None);
    }

    #[test]
    fn profiles() {
        let k3 = milgram_profile(&Graph::complete(3), 3).unwrap();
        assert_eq!(k3.x, 1.0);
        assert_eq!(k3.m_q, Ratio::from_integer(1));
        assert_eq!(k3.y, Some(0.0));

        let tree = Graph::from_edge_list("0 1\n0 2\n1 3\n1 4\n2 5\n2 6\n").unwrap();
        assert_eq!(milgram_profile(&tree, 5).unwrap().x, 0.0);

        // Six two-edge paths through the center of a 4-leaf star.
        let star = milgram_profile(&Graph::star(4), 3).unwrap();
        assert_eq!(star.x, 0.0);
        assert_eq!(star.s_bar, 6);
        assert_eq!(star.m_q, Ratio::new(6, 5));

        let empty = milgram_profile(&Graph::empty(4), 3).unwrap();
        assert_eq!(empty.y, None);
        assert_eq!(empty.log_ratio, None);
        assert!(milgram_profile(&Graph::complete(3), 2).is_err());
    }
}
