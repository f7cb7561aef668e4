//! Lower bounds for the unknotting number and the Gordian distance from
//! coloring dimensions over all flows.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::AlexanderBiquandle;
use crate::coloring::coloring_dimension;
use crate::diagram::Diagram;
use crate::flow::FlowSpace;
use crate::Error;

/// Multiset of coloring dimensions over all `Z_m`-flows, grouped by the gcd
/// of the flow.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DimProfile {
    pub m: u64,
    /// gcd → (dim → number of flows)
    pub classes: BTreeMap<u64, BTreeMap<usize, u128>>,
}

impl DimProfile {
    pub fn flow_count(&self) -> u128 {
        self.classes.values().flat_map(|c| c.values()).sum()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.classes
            .values()
            .filter_map(|c| c.keys().next_back().copied())
            .max()
    }

    pub fn class(&self, gcd: u64) -> Option<&BTreeMap<usize, u128>> {
        self.classes.get(&gcd)
    }

    fn merge(mut self, other: DimProfile) -> DimProfile {
        for (g, dims) in other.classes {
            let class = self.classes.entry(g).or_default();
            for (d, n) in dims {
                *class.entry(d).or_default() += n;
            }
        }
        self
    }
}

/// Computes the dimension for every flow; flows are evaluated in parallel on
/// the current rayon pool and the aggregate does not depend on scheduling.
pub fn flow_dim_profile(
    d: &Diagram,
    ab: &AlexanderBiquandle,
    m: u64,
    cap: u128,
) -> Result<DimProfile, Error> {
    d.ensure_valid()?;
    ab.require_zm_family(m)?;
    let fs = FlowSpace::new(d, m)?;
    let count = fs.checked_count(cap)?;
    let empty = || DimProfile {
        m,
        classes: BTreeMap::new(),
    };
    (0..count)
        .into_par_iter()
        .map(|i| {
            let flow = fs.flow_at(i);
            let dim = coloring_dimension(d, &flow, ab)?;
            let mut p = empty();
            p.classes.entry(flow.gcd()).or_default().insert(dim, 1);
            Ok(p)
        })
        .try_reduce(empty, |a, b| Ok(a.merge(b)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnknottingBound {
    pub bound: usize,
    pub flows_examined: u128,
    pub profile: DimProfile,
}

/// `max_φ dim Col_X(D, φ) - 1`.
pub fn unknotting_lower_bound(
    d: &Diagram,
    ab: &AlexanderBiquandle,
    m: u64,
    cap: u128,
) -> Result<UnknottingBound, Error> {
    let profile = flow_dim_profile(d, ab, m, cap)?;
    let max = profile.max_dim().expect("the zero flow always exists");
    Ok(UnknottingBound {
        bound: max - 1,
        flows_examined: profile.flow_count(),
        profile,
    })
}

/// `max_{φ1} min_{φ2, gcd φ1 = gcd φ2} |dim(D1, φ1) - dim(D2, φ2)|` from the
/// two profiles.
pub fn directed_bound(p1: &DimProfile, p2: &DimProfile) -> Result<usize, Error> {
    let mut best = 0;
    for (&g, dims) in &p1.classes {
        let other = p2.class(g).ok_or(Error::EmptyGcdClass(g))?;
        for &d1 in dims.keys() {
            let closest = other.keys().map(|&d2| d1.abs_diff(d2)).min().unwrap();
            best = best.max(closest);
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GordianBound {
    /// Largest of the two directed bounds.
    pub bound: usize,
    pub forward: usize,
    pub backward: usize,
    pub flows_examined: [u128; 2],
    pub profiles: [DimProfile; 2],
    pub warning: Option<String>,
}

/// Both directed bounds for `d(D1, D2)`. A warning is attached when the two
/// flow counts differ, which indicates the genera differ.
pub fn gordian_lower_bound(
    d1: &Diagram,
    d2: &Diagram,
    ab: &AlexanderBiquandle,
    m: u64,
    cap: u128,
) -> Result<GordianBound, Error> {
    let p1 = flow_dim_profile(d1, ab, m, cap)?;
    let p2 = flow_dim_profile(d2, ab, m, cap)?;
    let forward = directed_bound(&p1, &p2)?;
    let backward = directed_bound(&p2, &p1)?;
    let counts = [p1.flow_count(), p2.flow_count()];
    let warning = (counts[0] != counts[1]).then(|| {
        format!(
            "flow counts differ ({} vs {}); the diagrams probably have different genus",
            counts[0], counts[1]
        )
    });
    Ok(GordianBound {
        bound: forward.max(backward),
        forward,
        backward,
        flows_examined: counts,
        profiles: [p1, p2],
        warning,
    })
}
