//! The merged total order of constants and candidate roots, and the gap
//! coordinates it induces.

use std::fmt;

use crate::neumann::RootPlacement;

use super::GapPolynomial;

/// One of the 2n+1 ordered values: a constant a_j or a candidate root l_r.
/// Indices are 1-based to match the case naming.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SceneSymbol {
    A(usize),
    Lambda(usize),
}

impl fmt::Display for SceneSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SceneSymbol::A(j) => write!(f, "a{j}"),
            SceneSymbol::Lambda(r) => write!(f, "l{r}"),
        }
    }
}

/// Strict total order of all 2n+1 values for one placement class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedScene {
    n: usize,
    symbols: Vec<SceneSymbol>,
}

/// Merges the constants with the placed roots. Roots assigned to interval t
/// sit between a_t and a_{t+1}; roots sharing an interval keep index order.
pub fn scene_from_placement(n: usize, placement: &RootPlacement) -> OrderedScene {
    assert_eq!(placement.intervals().len(), n, "placement arity mismatch");
    let mut symbols = Vec::with_capacity(2 * n + 1);
    for t in 0..=n + 1 {
        if t >= 1 {
            symbols.push(SceneSymbol::A(t));
        }
        for (r, &interval) in placement.intervals().iter().enumerate() {
            if interval == t {
                symbols.push(SceneSymbol::Lambda(r + 1));
            }
        }
    }
    debug_assert_eq!(symbols.len(), 2 * n + 1);
    OrderedScene { n, symbols }
}

impl OrderedScene {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gap_count(&self) -> usize {
        2 * self.n
    }

    pub fn symbols(&self) -> &[SceneSymbol] {
        &self.symbols
    }

    /// 0-based position of a symbol in the order.
    pub fn position(&self, sym: SceneSymbol) -> usize {
        self.symbols
            .iter()
            .position(|&s| s == sym)
            .expect("symbol not present in scene")
    }

    /// Value of the symbol at `position`: the prefix sum g1 + ... + g_position
    /// (the first symbol has value 0).
    pub fn value_at(&self, position: usize) -> GapPolynomial {
        GapPolynomial::gap_range_sum(self.gap_count(), 0, position)
    }

    /// Value polynomial of a symbol.
    pub fn value(&self, sym: SceneSymbol) -> GapPolynomial {
        self.value_at(self.position(sym))
    }

    /// value(x) - value(y): a contiguous gap sum with sign given by order.
    pub fn difference(&self, x: SceneSymbol, y: SceneSymbol) -> GapPolynomial {
        self.value(x).sub(&self.value(y))
    }

    /// The positive difference forms value(later) - value(earlier) for every
    /// symbol pair, each a plain sum of consecutive gaps.
    pub fn positive_difference_forms(&self) -> Vec<GapPolynomial> {
        let m = self.symbols.len();
        let mut out = Vec::new();
        for lo in 0..m {
            for hi in lo + 1..m {
                out.push(GapPolynomial::gap_range_sum(self.gap_count(), lo, hi));
            }
        }
        out
    }

    /// Gaps realized by a concrete assignment of values to the symbols, in
    /// scene order. Caller guarantees the values respect the order.
    pub fn gaps_from_values(&self, values: &[crate::exact::Rational]) -> Vec<crate::exact::Rational> {
        assert_eq!(values.len(), self.symbols.len());
        values.windows(2).map(|w| &w[1] - &w[0]).collect()
    }

    /// Renders like "l1 < l2 < a1 < a2 < a3".
    pub fn order_string(&self) -> String {
        self.symbols
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" < ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neumann::RootPlacement;

    fn scene(n: usize, intervals: &[usize]) -> OrderedScene {
        scene_from_placement(n, &RootPlacement::new(intervals.to_vec(), n).unwrap())
    }

    #[test]
    fn merge_orders() {
        assert_eq!(scene(2, &[0, 0]).order_string(), "l1 < l2 < a1 < a2 < a3");
        assert_eq!(scene(2, &[1, 2]).order_string(), "a1 < l1 < a2 < l2 < a3");
        assert_eq!(scene(1, &[2]).order_string(), "a1 < a2 < l1");
    }

    #[test]
    fn value_prefix_sums() {
        let sc = scene(2, &[0, 0]); // l1 < l2 < a1 < a2 < a3
        let g = |k| GapPolynomial::gap(4, k);
        assert_eq!(sc.value(SceneSymbol::A(1)), g(0).add(&g(1)));
        let sc2 = scene(2, &[1, 2]); // a1 < l1 < a2 < l2 < a3
        assert_eq!(
            sc2.value(SceneSymbol::Lambda(2)),
            g(0).add(&g(1)).add(&g(2))
        );
        // a3 - l2 telescopes to g2+g3+g4 in the first scene; a3 - l1 spans
        // every gap.
        assert_eq!(
            sc.difference(SceneSymbol::A(3), SceneSymbol::Lambda(2)),
            g(1).add(&g(2)).add(&g(3))
        );
        assert_eq!(
            sc.difference(SceneSymbol::A(3), SceneSymbol::Lambda(1)),
            g(0).add(&g(1)).add(&g(2)).add(&g(3))
        );
    }

    #[test]
    fn difference_forms_cover_all_pairs() {
        let sc = scene(2, &[1, 1]);
        assert_eq!(sc.positive_difference_forms().len(), 10);
    }
}
