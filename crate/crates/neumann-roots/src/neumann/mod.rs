//! Problem front end: sign patterns, root placements, case naming, the
//! homogeneous system builder, and witness verification.
//!
//! A case is the pair (S, L): S selects the sign pattern eps_j (+1 on members
//! of S, -1 elsewhere) and L assigns each of the n candidate roots to one of
//! the n+2 open intervals cut by a_1 < ... < a_{n+1}. Interval indices run
//! 0 (left of a_1) through n+1 (right of a_{n+1}).

mod system;
mod upoly;

pub use system::{build_system_instance, build_system_symbolic, PlacementMismatch};
pub use upoly::{u_polynomial, verify_roots, RootCheck, UPolyError};

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exact::Rational;

/// Nonempty ascending subset of {1, ..., n+1}, 1-based members.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetS {
    members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("subset members must be strictly ascending and within 1..=n+1")]
    BadSubset,
    #[error("placement must list n nondecreasing interval indices in 0..=n+1")]
    BadPlacement,
    #[error("malformed case name {0:?}: expected S<subset digits>L<placement digits> (e.g. \"S13L02\"), subset digits strictly ascending in 1..=n+1, placement digits nondecreasing in 0..=n+1; long form uses commas, e.g. \"S1,3L0,2\"")]
    MalformedName(String),
}

impl SubsetS {
    pub fn new(members: Vec<usize>, n: usize) -> Result<Self, CaseError> {
        if members.is_empty() {
            return Err(CaseError::EmptySubset);
        }
        let ascending = members.windows(2).all(|w| w[0] < w[1]);
        if !ascending || members[0] < 1 || *members.last().unwrap() > n + 1 {
            return Err(CaseError::BadSubset);
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, j: usize) -> bool {
        self.members.binary_search(&j).is_ok()
    }
}

/// Nondecreasing interval indices, one per candidate root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootPlacement {
    intervals: Vec<usize>,
}

impl RootPlacement {
    pub fn new(intervals: Vec<usize>, n: usize) -> Result<Self, CaseError> {
        if intervals.len() != n
            || intervals.windows(2).any(|w| w[0] > w[1])
            || intervals.iter().any(|&t| t > n + 1)
        {
            return Err(CaseError::BadPlacement);
        }
        Ok(Self { intervals })
    }

    pub fn intervals(&self) -> &[usize] {
        &self.intervals
    }

    /// Multiplicity of each interval 0..=n+1 in the placement.
    pub fn interval_counts(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0usize; n + 2];
        for &t in &self.intervals {
            counts[t] += 1;
        }
        counts
    }
}

/// A named decision problem: sign pattern plus root placement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeumannCase {
    pub n: usize,
    pub subset: SubsetS,
    pub placement: RootPlacement,
}

impl NeumannCase {
    pub fn new(n: usize, subset: SubsetS, placement: RootPlacement) -> Self {
        debug_assert_eq!(placement.intervals.len(), n);
        Self { n, subset, placement }
    }

    /// Canonical name: short digit form while every index fits one digit
    /// (n <= 8), comma-separated long form beyond that.
    pub fn name(&self) -> String {
        let single_digit = self.n <= 8;
        let fmt_list = |xs: &[usize]| -> String {
            if single_digit {
                xs.iter().map(ToString::to_string).collect()
            } else {
                xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
            }
        };
        format!(
            "S{}L{}",
            fmt_list(&self.subset.members),
            fmt_list(&self.placement.intervals)
        )
    }

    pub fn parse(name: &str) -> Result<Self, CaseError> {
        let malformed = || CaseError::MalformedName(name.to_string());
        let rest = name.strip_prefix('S').ok_or_else(malformed)?;
        let (s_part, l_part) = rest.split_once('L').ok_or_else(malformed)?;
        if s_part.is_empty() || l_part.is_empty() {
            return Err(malformed());
        }
        let parse_list = |part: &str| -> Result<Vec<usize>, CaseError> {
            if part.contains(',') {
                part.split(',')
                    .map(|tok| tok.parse::<usize>().map_err(|_| malformed()))
                    .collect()
            } else {
                part.bytes()
                    .map(|b| {
                        if b.is_ascii_digit() {
                            Ok((b - b'0') as usize)
                        } else {
                            Err(malformed())
                        }
                    })
                    .collect()
            }
        };
        let members = parse_list(s_part)?;
        let intervals = parse_list(l_part)?;
        let n = intervals.len();
        if n == 0 {
            return Err(malformed());
        }
        let subset = SubsetS::new(members, n).map_err(|_| malformed())?;
        let placement = RootPlacement::new(intervals, n).map_err(|_| malformed())?;
        Ok(Self::new(n, subset, placement))
    }
}

impl fmt::Display for NeumannCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// +1 at subset members, -1 elsewhere; length n+1.
pub fn epsilon_vector(subset: &SubsetS, n: usize) -> Vec<i8> {
    (1..=n + 1)
        .map(|j| if subset.contains(j) { 1 } else { -1 })
        .collect()
}

/// All nondecreasing length-n sequences over {0, ..., n+1} in lexicographic
/// order; there are C(2n+1, n) of them.
pub fn enumerate_placements(n: usize) -> Vec<RootPlacement> {
    let mut out = Vec::new();
    let mut current = vec![0usize; n];
    loop {
        out.push(RootPlacement {
            intervals: current.clone(),
        });
        // Next nondecreasing sequence.
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if current[k] < n + 1 {
                let v = current[k] + 1;
                for slot in current.iter_mut().skip(k) {
                    *slot = v;
                }
                break;
            }
        }
    }
}

/// All nonempty subsets of {1, ..., n+1}, ordered by size then
/// lexicographically, matching the verdict table layout.
pub fn enumerate_subsets(n: usize) -> Vec<SubsetS> {
    let universe = n + 1;
    let mut all: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..(1 << universe) {
        let members: Vec<usize> = (1..=universe).filter(|j| mask & (1 << (j - 1)) != 0).collect();
        all.push(members);
    }
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all.into_iter()
        .map(|members| SubsetS { members })
        .collect()
}

/// All cases for a given n in table order (subsets outer, placements inner).
pub fn enumerate_cases(n: usize) -> Vec<NeumannCase> {
    let placements = enumerate_placements(n);
    enumerate_subsets(n)
        .into_iter()
        .flat_map(|s| {
            placements
                .iter()
                .map(move |p| NeumannCase::new(n, s.clone(), p.clone()))
        })
        .collect()
}

/// Concrete parameters: ascending a's and ascending candidate roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceParameters {
    pub a: Vec<Rational>,
    pub lambda: Vec<Rational>,
}

impl InstanceParameters {
    /// Checks strict ascent and that every root sits strictly inside its
    /// declared interval (boundary contact is rejected, not perturbed).
    pub fn check_placement(&self, placement: &RootPlacement) -> Result<(), PlacementMismatch> {
        let n = self.lambda.len();
        if self.a.len() != n + 1 || placement.intervals.len() != n {
            return Err(PlacementMismatch::Shape);
        }
        if self.a.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PlacementMismatch::ConstantsNotAscending);
        }
        if self.lambda.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PlacementMismatch::RootsNotAscending);
        }
        for (r, (lam, &t)) in self.lambda.iter().zip(placement.intervals.iter()).enumerate() {
            let below_ok = t == 0 || self.a[t - 1] < *lam;
            let above_ok = t == n + 1 || *lam < self.a[t];
            if !(below_ok && above_ok) {
                return Err(PlacementMismatch::RootOutsideInterval { root: r + 1, interval: t });
            }
        }
        if self
            .lambda
            .iter()
            .any(|lam| self.a.iter().any(|aj| (lam - aj).is_zero()))
        {
            return Err(PlacementMismatch::RootHitsConstant);
        }
        Ok(())
    }
}
