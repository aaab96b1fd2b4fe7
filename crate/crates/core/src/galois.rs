//! The Galois correspondence between subgroups of a group `W` acting on an
//! invariant set of pairs `D ⊆ B×B` and quotients of `B`.
//!
//! For a partition `p` of `B`, `W_p` is the set of `w` with
//! `p(pr1(w·d)) = p(pr1(d))` for every `d ∈ D`. For a subgroup `V`, `p^V` is
//! the finest partition with `V ≤ W_p`. The two maps are order-reversing and
//! adjoint: `V ≤ W_p` iff `p ≤ p^V`.

use std::collections::VecDeque;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coxeter::{enumerate_subgroups, CoxeterGroup, Subgroup, MAX_SUBGROUP_SWEEP_ORDER};
use crate::partition::{DisjointSets, Partition};
use crate::{Error, Result};

/// A finite group acting on a set of ordered pairs over a ground set.
#[derive(Debug, Clone)]
pub struct PairAction {
    ground: usize,
    domain: Vec<(usize, usize)>,
    group: CoxeterGroup,
    /// `table[w][d]` is the index of `w·domain[d]`.
    table: Vec<Vec<u32>>,
}

impl PairAction {
    /// Builds the action from the permutations of `domain` induced by each
    /// generator of `group` (in generator order).
    ///
    /// The action of every other element is obtained along the Cayley graph
    /// and cross-checked on every edge, so an inconsistent assignment is
    /// rejected rather than silently producing a non-action.
    pub fn from_generators(
        ground: usize,
        domain: Vec<(usize, usize)>,
        group: CoxeterGroup,
        generator_actions: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if generator_actions.len() != group.rank() {
            return Err(Error::Domain(format!(
                "{} generator actions for a group of rank {}",
                generator_actions.len(),
                group.rank()
            )));
        }
        if let Some(&(x, y)) = domain.iter().find(|&&(x, y)| x >= ground || y >= ground) {
            return Err(Error::Domain(format!("pair ({x}, {y}) outside ground set")));
        }
        let len = domain.len();
        for action in &generator_actions {
            check_bijection(action, len)?;
        }
        let gens = group.generator_indices();
        let mut table: Vec<Option<Vec<u32>>> = vec![None; group.order()];
        table[group.identity()] = Some((0..len as u32).collect());
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(w) = queue.pop_front() {
            let current = table[w].clone().expect("queued elements have tables");
            for (k, &s) in gens.iter().enumerate() {
                let sw = group.mul(s, w);
                let composed: Vec<u32> = current
                    .iter()
                    .map(|&d| generator_actions[k][d as usize] as u32)
                    .collect();
                match &table[sw] {
                    Some(existing) if *existing != composed => {
                        return Err(Error::Invariant(
                            "generator actions do not define a group action".into(),
                        ));
                    }
                    Some(_) => {}
                    None => {
                        table[sw] = Some(composed);
                        queue.push_back(sw);
                    }
                }
            }
        }
        let table = table
            .into_iter()
            .map(|t| t.expect("generators reach every element"))
            .collect();
        Ok(Self {
            ground,
            domain,
            group,
            table,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn domain(&self) -> &[(usize, usize)] {
        &self.domain
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    /// Index of `w·domain[d]`.
    #[inline]
    pub fn act(&self, w: usize, d: usize) -> usize {
        self.table[w][d] as usize
    }

    /// Checks `table(id) = id` and `table(wv) = table(w)∘table(v)` exhaustively.
    pub fn verify_action_law(&self) -> Result<()> {
        let n = self.group.order();
        if (0..self.domain.len()).any(|d| self.act(self.group.identity(), d) != d) {
            return Err(Error::Invariant("identity acts non-trivially".into()));
        }
        for w in 0..n {
            for v in 0..n {
                let wv = self.group.mul(w, v);
                if (0..self.domain.len()).any(|d| self.act(wv, d) != self.act(w, self.act(v, d))) {
                    return Err(Error::Invariant(format!("action law fails at ({w}, {v})")));
                }
            }
        }
        Ok(())
    }

    fn check_partition(&self, p: &Partition) -> Result<()> {
        if p.len() != self.ground {
            return Err(Error::Domain(format!(
                "partition of {} points for a ground set of {}",
                p.len(),
                self.ground
            )));
        }
        Ok(())
    }

    fn fixes_first_coordinate_class(&self, w: usize, p: &Partition) -> bool {
        self.domain.iter().enumerate().all(|(d, &(x, _))| {
            p.block_of(self.domain[self.act(w, d)].0) == p.block_of(x)
        })
    }

    /// `W_p = { w : p ∘ pr1 ∘ w = p ∘ pr1 }`.
    pub fn stabilizer_subgroup(&self, p: &Partition) -> Result<Subgroup> {
        self.check_partition(p)?;
        let members = (0..self.group.order())
            .filter(|&w| self.fixes_first_coordinate_class(w, p))
            .collect();
        Subgroup::from_members(&self.group, members)
            .map_err(|e| Error::Invariant(format!("stabilizer is not a subgroup: {e}")))
    }

    /// `p^V`, the finest partition with `V ≤ W_p`: the equivalence relation
    /// generated by `x ~ pr1(w·(x, y))` over `w ∈ V` and `(x, y) ∈ D`.
    pub fn finest_invariant_quotient(&self, v: &Subgroup) -> Result<Partition> {
        v.validate(&self.group)?;
        let mut sets = DisjointSets::new(self.ground);
        for &w in v.members() {
            for (d, &(x, _)) in self.domain.iter().enumerate() {
                sets.union(x, self.domain[self.act(w, d)].0);
            }
        }
        Ok(sets.into_partition())
    }

    /// `V̄ = W_{p^V}`.
    pub fn close_subgroup(&self, v: &Subgroup) -> Result<Subgroup> {
        self.stabilizer_subgroup(&self.finest_invariant_quotient(v)?)
    }

    /// `p̄ = p^{W_p}`.
    pub fn close_quotient(&self, p: &Partition) -> Result<Partition> {
        self.finest_invariant_quotient(&self.stabilizer_subgroup(p)?)
    }

    /// Evaluates `V ≤ W_p  ⇔  p ≤ p^V` for one pair.
    pub fn check_adjunction(&self, v: &Subgroup, p: &Partition) -> Result<bool> {
        let left = v.is_subset_of(&self.stabilizer_subgroup(p)?);
        let right = p.leq(&self.finest_invariant_quotient(v)?)?;
        Ok(left == right)
    }

    /// Runs the adjunction against `count` random partitions drawn from a
    /// seeded generator, for every subgroup in `subgroups`. Returns the
    /// number of violating pairs.
    pub fn adjunction_violations_random(
        &self,
        subgroups: &[Subgroup],
        count: usize,
        seed: u64,
    ) -> Result<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut violations = 0;
        let quotients: Vec<Partition> = (0..count)
            .map(|_| Partition::random(self.ground, &mut rng))
            .collect();
        let finest: Vec<Partition> = subgroups
            .iter()
            .map(|v| self.finest_invariant_quotient(v))
            .collect::<Result<_>>()?;
        for p in &quotients {
            let stab = self.stabilizer_subgroup(p)?;
            for (v, pv) in subgroups.iter().zip(&finest) {
                if v.is_subset_of(&stab) != p.leq(pv)? {
                    violations += 1;
                }
            }
        }
        Ok(violations)
    }

    /// Closed subgroups and closed quotients with their pairing.
    ///
    /// Sweeps every subgroup `V`; `V` is closed when `W_{p^V} = V`, and its
    /// partner is `p^V`.
    pub fn enumerate_closed(&self) -> Result<ClosedLattice> {
        if self.group.order() > MAX_SUBGROUP_SWEEP_ORDER {
            return Err(Error::Size(format!(
                "closed-object sweep limited to |W| <= {MAX_SUBGROUP_SWEEP_ORDER}"
            )));
        }
        let mut pairs: Vec<(Subgroup, Partition)> = Vec::new();
        for v in enumerate_subgroups(&self.group)? {
            let pv = self.finest_invariant_quotient(&v)?;
            if self.stabilizer_subgroup(&pv)? == v {
                pairs.push((v, pv));
            }
        }
        ClosedLattice::new(self, pairs)
    }
}

fn check_bijection(action: &[usize], len: usize) -> Result<()> {
    if action.len() != len {
        return Err(Error::Domain("generator action has the wrong length".into()));
    }
    let mut seen = vec![false; len];
    for &d in action {
        if d >= len || seen[d] {
            return Err(Error::Domain("generator action is not a bijection".into()));
        }
        seen[d] = true;
    }
    Ok(())
}

/// Closed subgroups and closed quotients, paired by the correspondence.
#[derive(Debug, Clone)]
pub struct ClosedLattice {
    subgroups: Vec<Subgroup>,
    quotients: Vec<Partition>,
    /// `pairing[i]` is the quotient paired with `subgroups[i]`.
    pairing: Vec<usize>,
    subgroup_hasse: Vec<(usize, usize)>,
    quotient_hasse: Vec<(usize, usize)>,
}

impl ClosedLattice {
    fn new(action: &PairAction, mut pairs: Vec<(Subgroup, Partition)>) -> Result<Self> {
        pairs.sort_by(|a, b| a.0.canonical_key().cmp(&b.0.canonical_key()));
        let subgroups: Vec<Subgroup> = pairs.iter().map(|(v, _)| v.clone()).collect();
        let mut quotients: Vec<Partition> = pairs.iter().map(|(_, p)| p.clone()).collect();
        quotients.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
        quotients.dedup();
        if quotients.len() != subgroups.len() {
            return Err(Error::Invariant("closed objects are not in bijection".into()));
        }
        let pairing: Vec<usize> = pairs
            .iter()
            .map(|(_, p)| quotients.iter().position(|q| q == p).expect("present"))
            .collect();

        let k = subgroups.len();
        for i in 0..k {
            for j in 0..k {
                let sub = subgroups[i].is_subset_of(&subgroups[j]);
                let quo = quotients[pairing[j]].leq(&quotients[pairing[i]])?;
                if sub != quo {
                    return Err(Error::Invariant(format!(
                        "pairing is not order-reversing at ({i}, {j})"
                    )));
                }
            }
            if action.close_quotient(&quotients[pairing[i]])? != quotients[pairing[i]] {
                return Err(Error::Invariant("partner quotient is not closed".into()));
            }
        }
        let subgroup_hasse = hasse(k, |a, b| subgroups[a] != subgroups[b] && subgroups[a].is_subset_of(&subgroups[b]));
        let quotient_hasse = hasse(k, |a, b| {
            quotients[a] != quotients[b] && quotients[a].leq(&quotients[b]).unwrap_or(false)
        });
        Ok(Self {
            subgroups,
            quotients,
            pairing,
            subgroup_hasse,
            quotient_hasse,
        })
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn quotients(&self) -> &[Partition] {
        &self.quotients
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    /// Index of the subgroup paired with quotient `j`.
    pub fn subgroup_of_quotient(&self, j: usize) -> usize {
        self.pairing.iter().position(|&p| p == j).expect("pairing is a bijection")
    }

    /// Covering relations `(lower, upper)` among closed subgroups.
    pub fn subgroup_hasse(&self) -> &[(usize, usize)] {
        &self.subgroup_hasse
    }

    /// Covering relations `(coarser, finer)` among closed quotients.
    pub fn quotient_hasse(&self) -> &[(usize, usize)] {
        &self.quotient_hasse
    }

    pub fn subgroup_index(&self, v: &Subgroup) -> Option<usize> {
        self.subgroups.iter().position(|s| s == v)
    }

    pub fn quotient_index(&self, p: &Partition) -> Option<usize> {
        self.quotients.iter().position(|s| s == p)
    }

    /// Meet of two closed subgroups (their intersection).
    pub fn subgroup_meet(&self, a: usize, b: usize) -> Option<usize> {
        self.subgroup_index(&self.subgroups[a].intersection(&self.subgroups[b]))
    }

    /// Join of two closed subgroups: the closure of the generated subgroup.
    pub fn subgroup_join(&self, action: &PairAction, a: usize, b: usize) -> Result<Option<usize>> {
        let joined = self.subgroups[a].join(&self.subgroups[b], action.group());
        Ok(self.subgroup_index(&action.close_subgroup(&joined)?))
    }

    /// Meet of two closed quotients (finest common coarsening).
    pub fn quotient_meet(&self, a: usize, b: usize) -> Result<Option<usize>> {
        Ok(self.quotient_index(&self.quotients[a].meet(&self.quotients[b])?))
    }

    /// Join of two closed quotients: the closure of the common refinement.
    pub fn quotient_join(&self, action: &PairAction, a: usize, b: usize) -> Result<Option<usize>> {
        let joined = self.quotients[a].join(&self.quotients[b])?;
        Ok(self.quotient_index(&action.close_quotient(&joined)?))
    }

    /// Whether the closed subgroups are closed under intersection and
    /// subgroup generation, without taking closures.
    pub fn subgroups_form_sublattice(&self, group: &CoxeterGroup) -> bool {
        let k = self.len();
        (0..k).all(|a| {
            (0..k).all(|b| {
                self.subgroup_index(&self.subgroups[a].intersection(&self.subgroups[b])).is_some()
                    && self
                        .subgroup_index(&self.subgroups[a].join(&self.subgroups[b], group))
                        .is_some()
            })
        })
    }

    /// Whether the closed quotients are closed under partition meet and join,
    /// without taking closures.
    pub fn quotients_form_sublattice(&self) -> bool {
        let k = self.len();
        (0..k).all(|a| {
            (0..k).all(|b| {
                let m = self.quotients[a].meet(&self.quotients[b]);
                let j = self.quotients[a].join(&self.quotients[b]);
                matches!((m, j), (Ok(m), Ok(j)) if self.quotient_index(&m).is_some() && self.quotient_index(&j).is_some())
            })
        })
    }

    /// Number of pairs `(a, b)` where the pairing fails to exchange meets
    /// and joins.
    pub fn meet_join_exchange_violations(&self, action: &PairAction) -> Result<usize> {
        let k = self.len();
        let mut bad = 0;
        for a in 0..k {
            for b in 0..k {
                let (pa, pb) = (self.pairing[a], self.pairing[b]);
                let meet = self.subgroup_meet(a, b);
                let join = self.subgroup_join(action, a, b)?;
                let qjoin = self.quotient_join(action, pa, pb)?;
                let qmeet = self.quotient_meet(pa, pb)?;
                let ok_meet = matches!((meet, qjoin), (Some(m), Some(j)) if self.pairing[m] == j);
                let ok_join = matches!((join, qmeet), (Some(j), Some(m)) if self.pairing[j] == m);
                if !(ok_meet && ok_join) {
                    bad += 1;
                }
            }
        }
        Ok(bad)
    }
}

fn hasse(k: usize, lt: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if lt(a, b) && !(0..k).any(|c| lt(a, c) && lt(c, b)) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// The product model: `B = B_1 × B_2` with the full pair domain and
/// `W = (Z/2)^2`, where `w_i` swaps the `B_i`-coordinates of the two points.
///
/// Point `(x1, x2)` has index `x1 * m2 + x2`.
pub fn product_pair_action(m1: usize, m2: usize) -> Result<PairAction> {
    const MAX_FACTOR: usize = 16;
    if m1 < 2 || m2 < 2 {
        return Err(Error::Domain(format!(
            "factor sizes must be at least 2, got ({m1}, {m2})"
        )));
    }
    if m1 > MAX_FACTOR || m2 > MAX_FACTOR {
        return Err(Error::Size(format!("factor sizes are capped at {MAX_FACTOR}")));
    }
    let ground = m1 * m2;
    let split = |b: usize| (b / m2, b % m2);
    let join = |x1: usize, x2: usize| x1 * m2 + x2;
    let domain: Vec<(usize, usize)> = (0..ground)
        .flat_map(|b| (0..ground).map(move |c| (b, c)))
        .collect();
    let index = |(b, c): (usize, usize)| b * ground + c;
    let swap_first: Vec<usize> = domain
        .iter()
        .map(|&(b, c)| {
            let ((x1, x2), (y1, y2)) = (split(b), split(c));
            index((join(y1, x2), join(x1, y2)))
        })
        .collect();
    let swap_second: Vec<usize> = domain
        .iter()
        .map(|&(b, c)| {
            let ((x1, x2), (y1, y2)) = (split(b), split(c));
            index((join(x1, y2), join(y1, x2)))
        })
        .collect();
    PairAction::from_generators(
        ground,
        domain,
        CoxeterGroup::involution_product(2)?,
        vec![swap_first, swap_second],
    )
}

/// Projections of the product model onto its two factors.
pub fn product_projections(m1: usize, m2: usize) -> (Partition, Partition) {
    let ground = m1 * m2;
    (
        Partition::from_labels((0..ground).map(|b| b / m2)),
        Partition::from_labels((0..ground).map(|b| b % m2)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product() -> PairAction {
        product_pair_action(3, 4).unwrap()
    }

    #[test]
    fn product_action_is_an_action() {
        let a = product();
        a.verify_action_law().unwrap();
        assert_eq!(a.domain().len(), 144);
    }

    #[test]
    fn flip_swaps_pairs() {
        let a = product();
        let flip = a.group().flip().unwrap();
        for (d, &(x, y)) in a.domain().iter().enumerate() {
            assert_eq!(a.domain()[a.act(flip, d)], (y, x));
        }
    }

    #[test]
    fn one_block_stabilizer_is_everything() {
        let a = product();
        let s = a.stabilizer_subgroup(&Partition::one_block(12)).unwrap();
        assert_eq!(s, Subgroup::whole(a.group()));
    }

    #[test]
    fn trivial_subgroup_gives_identity_partition() {
        let a = product();
        let p = a.finest_invariant_quotient(&Subgroup::trivial(a.group())).unwrap();
        assert!(p.is_identity());
    }

    #[test]
    fn flip_closes_to_whole_group() {
        let a = product();
        let flip = Subgroup::generated_by(a.group(), &[a.group().flip().unwrap()]);
        assert!(a.finest_invariant_quotient(&flip).unwrap().is_one_block());
        assert_eq!(a.close_subgroup(&flip).unwrap(), Subgroup::whole(a.group()));
    }

    #[test]
    fn factor_flips_pair_with_complementary_projections() {
        let a = product();
        let (pr1, pr2) = product_projections(3, 4);
        let g = a.group().generator_indices();
        let w1 = Subgroup::generated_by(a.group(), &[g[0]]);
        let w2 = Subgroup::generated_by(a.group(), &[g[1]]);
        assert_eq!(a.finest_invariant_quotient(&w1).unwrap(), pr2);
        assert_eq!(a.finest_invariant_quotient(&w2).unwrap(), pr1);
        assert_eq!(a.stabilizer_subgroup(&pr1).unwrap(), w2);
    }

    #[test]
    fn adjunction_on_structured_quotients() {
        let a = product();
        let (pr1, pr2) = product_projections(3, 4);
        let quotients = [Partition::one_block(12), pr1, pr2, Partition::identity(12)];
        let subgroups = enumerate_subgroups(a.group()).unwrap();
        assert_eq!(subgroups.len(), 5);
        let mut checked = 0;
        for v in &subgroups {
            for p in &quotients {
                assert!(a.check_adjunction(v, p).unwrap());
                checked += 1;
            }
        }
        assert_eq!(checked, 20);
        assert_eq!(a.adjunction_violations_random(&subgroups, 100, 7).unwrap(), 0);
    }

    #[test]
    fn closed_lattice_of_product() {
        let a = product();
        let lattice = a.enumerate_closed().unwrap();
        assert_eq!(lattice.len(), 4);
        let (pr1, pr2) = product_projections(3, 4);
        let mut expected = vec![Partition::one_block(12), pr1, pr2, Partition::identity(12)];
        expected.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
        assert_eq!(lattice.quotients(), expected.as_slice());
        assert_eq!(lattice.meet_join_exchange_violations(&a).unwrap(), 0);
        assert!(lattice.subgroups_form_sublattice(a.group()));
        assert!(lattice.quotients_form_sublattice());
        assert_eq!(lattice.subgroup_hasse().len(), 4);
        assert_eq!(lattice.quotient_hasse().len(), 4);
    }

    #[test]
    fn product_guards() {
        assert!(matches!(product_pair_action(1, 5), Err(Error::Domain(_))));
        assert!(matches!(product_pair_action(2, 17), Err(Error::Size(_))));
    }

    #[test]
    fn size_mismatches() {
        let a = product();
        assert!(matches!(a.stabilizer_subgroup(&Partition::identity(5)), Err(Error::Domain(_))));
        let s3 = CoxeterGroup::symmetric(3).unwrap();
        assert!(matches!(
            a.finest_invariant_quotient(&Subgroup::trivial(&s3)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn inconsistent_generator_actions_rejected() {
        // (Z/2)^2 on a 3-element domain where the generators do not commute
        let g = CoxeterGroup::involution_product(2).unwrap();
        let domain = vec![(0, 0), (0, 1), (1, 0)];
        let r = PairAction::from_generators(2, domain, g, vec![vec![1, 0, 2], vec![0, 2, 1]]);
        assert!(matches!(r, Err(Error::Invariant(_))));
    }
}
