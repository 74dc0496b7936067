use std::collections::BTreeMap;

use super::ahss::{bigraded_table, cohomology_pairing, CupSign};
use crate::error::{Error, Result};
use crate::exactlin::Subquotient;
use crate::graded::reindex::{ungraded_remark_exponent, Reindexing};
use crate::graded::ring::GradedRing;
use crate::graded::signs::SignFamily;
use crate::simplicial::nerve::{nerve, FiniteGroup};
use crate::ssengine::{compare_global_iso, Bidegree, IsoVerdict, PagePairing};

/// `H^p(G; A_q)` for `p < maxdim` through the normalized bar complex, with the
/// graded and the ungraded cup pairings.
#[derive(Clone, Debug)]
pub struct GroupPage {
    pub table: BTreeMap<Bidegree, Subquotient>,
    pub graded: PagePairing,
    pub ungraded: PagePairing,
}

impl GroupPage {
    /// Graded versus ungraded pairing under the `(-1)^{pq}` identification,
    /// twisted by the `(-1)^{t(p+q)}` sign transported to engine indexing.
    pub fn remark_verdict(&self) -> IsoVerdict {
        let twist = Reindexing::PaperToEngine.transport(&ungraded_remark_exponent());
        compare_global_iso(&self.graded, &self.ungraded, None, &SignFamily::pq(), &twist)
    }
}

fn is_trivial_action(action: &[Vec<i64>]) -> bool {
    action
        .iter()
        .all(|g| g.iter().enumerate().all(|(i, &x)| x == i as i64))
}

/// `qs` lists the coefficient degrees to tabulate.
pub fn build_group_page(
    group: &FiniteGroup,
    ring: &GradedRing,
    maxdim: usize,
    qs: &[i64],
    action: Option<&[Vec<i64>]>,
) -> Result<GroupPage> {
    if action.is_some_and(|a| !is_trivial_action(a)) {
        return Err(Error::NontrivialActionUnsupported);
    }
    if maxdim < 2 {
        return Err(Error::InvalidComplex("the group page needs maxdim at least 2".into()));
    }
    let bar = nerve(group, maxdim);
    let qs: Vec<i64> = qs.iter().copied().filter(|&q| !ring.level(q).is_zero()).collect();
    let table = bigraded_table(&bar, ring, maxdim - 1, &qs);
    let (lo, hi) = (*qs.iter().min().unwrap_or(&0), *qs.iter().max().unwrap_or(&0));
    let bounds = Some((Bidegree::new(0, lo), Bidegree::new(maxdim as i64 - 1, hi)));
    let graded = cohomology_pairing(&bar, ring, &table, CupSign::Graded, None, bounds)?;
    let ungraded = cohomology_pairing(&bar, ring, &table, CupSign::Ungraded, None, bounds)?;
    Ok(GroupPage { table, graded, ungraded })
}
