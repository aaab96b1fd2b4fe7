//! Finite Coxeter-type groups realized as permutation groups.
//!
//! Elements are permutations of a fixed ground set `{0, .., m-1}` and
//! compose right-to-left: `(a * b)(i) = a(b(i))`. Every group stores the
//! exhaustive, lexicographically sorted list of its elements, so element
//! index `0` is always the identity.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::{Error, Result};

/// Largest `n` accepted by [`CoxeterGroup::symmetric`].
pub const MAX_SYMMETRIC_DEGREE: usize = 8;
/// Largest rank accepted by [`CoxeterGroup::involution_product`].
pub const MAX_INVOLUTION_RANK: usize = 10;
/// Largest group order accepted by [`enumerate_subgroups`].
pub const MAX_SUBGROUP_SWEEP_ORDER: usize = 1024;
/// Bound on the raw generator-image search space `|W2|^r`.
pub const MAX_HOM_SEARCH: u64 = 10_000_000;
/// Largest source order for which the full multiplication table is checked.
pub const MAX_HOM_SOURCE_ORDER: usize = 5040;
/// Abort subgroup enumeration past this many subgroups.
pub const MAX_SUBGROUP_COUNT: usize = 200_000;

/// A permutation of `{0, .., m-1}`, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    images: Vec<u32>,
}

impl GroupElement {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its (0-based) image array.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x >= m || seen[x] {
                return Err(Error::Domain(format!(
                    "image array {images:?} is not a bijection of 0..{m}"
                )));
            }
            seen[x] = true;
        }
        Ok(Self {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// The transposition swapping `a` and `b` (0-based).
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut e = Self::identity(degree);
        e.images.swap(a, b);
        e
    }

    /// The permutation `i ↦ m-1-i`.
    pub fn reversal(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).rev().collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Self { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut power = self.clone();
        while !power.is_identity() {
            power = power.compose(self);
            k += 1;
        }
        k
    }

    /// Number of pairs `i < j` with `w(i) > w(j)`; the Coxeter length in `S_n`.
    pub fn inversions(&self) -> usize {
        let m = self.degree();
        (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .filter(|&(i, j)| self.images[i] > self.images[j])
            .count()
    }

    /// Disjoint cycles of length at least two, 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Display for GroupElement {
    /// Cycle notation, 1-based; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// The families of groups this crate can construct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoxeterFamily {
    /// `S_n`, the Weyl group of type `A_{n-1}`.
    TypeA { n: usize },
    /// `(Z/2)^r` with commuting involutive generators.
    Involutions { r: usize },
}

impl fmt::Display for CoxeterFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterFamily::TypeA { n } => write!(f, "S{n}"),
            CoxeterFamily::Involutions { r } => write!(f, "Z2^{r}"),
        }
    }
}

/// A finite group with involutive generators and a Coxeter matrix.
#[derive(Debug, Clone)]
pub struct CoxeterGroup {
    family: CoxeterFamily,
    degree: usize,
    generators: Vec<GroupElement>,
    labels: Vec<String>,
    coxeter_matrix: Vec<Vec<u32>>,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    flip: Option<usize>,
}

impl CoxeterGroup {
    /// `S_n` generated by the adjacent transpositions `s_i = (i i+1)`.
    ///
    /// The distinguished flip is the longest element.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("symmetric group needs n >= 1".into()));
        }
        if n > MAX_SYMMETRIC_DEGREE {
            return Err(Error::Size(format!(
                "S_{n} exceeds the enumeration cap n <= {MAX_SYMMETRIC_DEGREE}"
            )));
        }
        let generators: Vec<_> = (0..n - 1)
            .map(|i| GroupElement::transposition(n, i, i + 1))
            .collect();
        let r = generators.len();
        let coxeter_matrix = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| match i.abs_diff(j) {
                        0 => 1,
                        1 => 3,
                        _ => 2,
                    })
                    .collect()
            })
            .collect();
        let mut group = Self::from_parts(CoxeterFamily::TypeA { n }, n, generators, coxeter_matrix)?;
        group.flip = group.index_of(&GroupElement::reversal(n));
        Ok(group)
    }

    /// `(Z/2)^r` acting on `2r` points, `w_i` swapping `2i` and `2i+1`.
    ///
    /// The distinguished flip is `w_1 ⋯ w_r`.
    pub fn involution_product(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::Domain("involution product needs r >= 1".into()));
        }
        if r > MAX_INVOLUTION_RANK {
            return Err(Error::Size(format!(
                "(Z/2)^{r} exceeds the cap r <= {MAX_INVOLUTION_RANK}"
            )));
        }
        let degree = 2 * r;
        let generators: Vec<_> = (0..r)
            .map(|i| GroupElement::transposition(degree, 2 * i, 2 * i + 1))
            .collect();
        let coxeter_matrix = (0..r)
            .map(|i| (0..r).map(|j| if i == j { 1 } else { 2 }).collect())
            .collect();
        let flip = generators
            .iter()
            .fold(GroupElement::identity(degree), |acc, g| acc.compose(g));
        let mut group =
            Self::from_parts(CoxeterFamily::Involutions { r }, degree, generators, coxeter_matrix)?;
        group.flip = group.index_of(&flip);
        Ok(group)
    }

    fn from_parts(
        family: CoxeterFamily,
        degree: usize,
        generators: Vec<GroupElement>,
        coxeter_matrix: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let identity = GroupElement::identity(degree);
        let mut seen: HashSet<GroupElement> = HashSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<_> = seen.into_iter().collect();
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let labels = (1..=generators.len()).map(|i| format!("s{i}")).collect();
        let group = Self {
            family,
            degree,
            generators,
            labels,
            coxeter_matrix,
            elements,
            index,
            flip: None,
        };
        group.verify_relations()?;
        Ok(group)
    }

    /// Checks `s_i^2 = 1` and that `s_i s_j` has order `m_ij`.
    pub fn verify_relations(&self) -> Result<()> {
        for (i, si) in self.generators.iter().enumerate() {
            for (j, sj) in self.generators.iter().enumerate() {
                let order = si.compose(sj).order();
                if order as u32 != self.coxeter_matrix[i][j] {
                    return Err(Error::Invariant(format!(
                        "order of s{}s{} is {order}, Coxeter matrix says {}",
                        i + 1,
                        j + 1,
                        self.coxeter_matrix[i][j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn family(&self) -> CoxeterFamily {
        self.family
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn generator_labels(&self) -> &[String] {
        &self.labels
    }

    /// Element indices of the generators, in label order.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter_matrix
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &GroupElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Index of the identity element.
    pub fn identity(&self) -> usize {
        0
    }

    /// Index of the distinguished flip, if one is set.
    pub fn flip(&self) -> Option<usize> {
        self.flip
    }

    /// Index of `elements[a] * elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// Row-major Cayley table, `table[a * order + b] = a * b`.
    pub fn multiplication_table(&self) -> Vec<u32> {
        let n = self.order();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(self.mul(a, b) as u32);
            }
        }
        table
    }

    /// The longest element of `S_n`, the reversal `i ↦ n+1-i`.
    pub fn longest_element(&self) -> Result<GroupElement> {
        match self.family {
            CoxeterFamily::TypeA { n } => Ok(GroupElement::reversal(n)),
            other => Err(Error::Unsupported(format!(
                "longest element is only provided for type A, got {other}"
            ))),
        }
    }

    /// Whether the Coxeter diagram (edges where `m_ij >= 3`) is connected.
    ///
    /// An empty diagram counts as connected.
    pub fn is_irreducible(&self) -> bool {
        let r = self.rank();
        if r <= 1 {
            return true;
        }
        let mut seen = vec![false; r];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..r {
                if !seen[j] && self.coxeter_matrix[i][j] >= 3 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Whether `v` is normal in this group.
    pub fn is_normal(&self, v: &Subgroup) -> Result<bool> {
        v.validate(self)?;
        for w in 0..self.order() {
            let w_inv = self.inv(w);
            for &x in v.members() {
                if !v.contains(self.mul(self.mul(w, x), w_inv)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Parses `S<n>` / `S_<n>` or `Z2^<r>` / `(Z/2)^<r>`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let parse = |digits: &str| {
            digits
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad group spec {spec:?}")))
        };
        if let Some(rest) = s.strip_prefix("S_").or_else(|| s.strip_prefix('S')) {
            return Self::symmetric(parse(rest)?);
        }
        for prefix in ["Z2^", "(Z/2)^", "(Z/2Z)^"] {
            if let Some(rest) = s.strip_prefix(prefix) {
                return Self::involution_product(parse(rest)?);
            }
        }
        Err(Error::Domain(format!(
            "unsupported group spec {spec:?}; expected S<n> or Z2^<r>"
        )))
    }
}

/// A subgroup, stored as sorted element indices of its parent group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<usize>,
}

impl Subgroup {
    /// Wraps `members` after checking closure under products and inverses.
    pub fn from_members(group: &CoxeterGroup, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let s = Self {
            parent_order: group.order(),
            members,
        };
        s.validate(group)?;
        Ok(s)
    }

    pub fn trivial(group: &CoxeterGroup) -> Self {
        Self {
            parent_order: group.order(),
            members: vec![group.identity()],
        }
    }

    pub fn whole(group: &CoxeterGroup) -> Self {
        Self {
            parent_order: group.order(),
            members: (0..group.order()).collect(),
        }
    }

    /// The subgroup generated by the given element indices.
    pub fn generated_by(group: &CoxeterGroup, gens: &[usize]) -> Self {
        let mut seen = vec![false; group.order()];
        seen[group.identity()] = true;
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = group.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Self {
            parent_order: group.order(),
            members: (0..group.order()).filter(|&i| seen[i]).collect(),
        }
    }

    /// Domain error unless this is a subgroup of `group`.
    pub fn validate(&self, group: &CoxeterGroup) -> Result<()> {
        if self.parent_order != group.order() {
            return Err(Error::Domain(format!(
                "subgroup belongs to a group of order {}, not {}",
                self.parent_order,
                group.order()
            )));
        }
        if self.members.iter().any(|&m| m >= group.order()) {
            return Err(Error::Domain("subgroup member index out of range".into()));
        }
        if !self.contains(group.identity()) {
            return Err(Error::Domain("subgroup does not contain the identity".into()));
        }
        for &a in &self.members {
            if !self.contains(group.inv(a)) {
                return Err(Error::Domain("subgroup is not closed under inverses".into()));
            }
            for &b in &self.members {
                if !self.contains(group.mul(a, b)) {
                    return Err(Error::Domain("subgroup is not closed under products".into()));
                }
            }
        }
        Ok(())
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.binary_search(&element).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            parent_order: self.parent_order,
            members: self
                .members
                .iter()
                .copied()
                .filter(|&m| other.contains(m))
                .collect(),
        }
    }

    /// `⟨self ∪ other⟩`.
    pub fn join(&self, other: &Subgroup, group: &CoxeterGroup) -> Subgroup {
        let gens: Vec<usize> = self.members.iter().chain(&other.members).copied().collect();
        Subgroup::generated_by(group, &gens)
    }

    /// Canonical ordering key: size, then sorted member list.
    pub fn canonical_key(&self) -> (usize, &[usize]) {
        (self.members.len(), &self.members)
    }

    /// Members rendered in cycle notation.
    pub fn labels(&self, group: &CoxeterGroup) -> Vec<String> {
        self.members.iter().map(|&m| group.element(m).to_string()).collect()
    }
}

/// Every subgroup of `group`, in canonical order.
///
/// Subgroups are grown one generator at a time from the trivial subgroup;
/// adjoining a single element from each cyclic subgroup suffices.
pub fn enumerate_subgroups(group: &CoxeterGroup) -> Result<Vec<Subgroup>> {
    let order = group.order();
    if order > MAX_SUBGROUP_SWEEP_ORDER {
        return Err(Error::Size(format!(
            "subgroup sweep limited to |W| <= {MAX_SUBGROUP_SWEEP_ORDER}, got {order}"
        )));
    }
    let table = group.multiplication_table();
    let mul = |a: usize, b: usize| table[a * order + b] as usize;

    // one representative per cyclic subgroup
    let mut cyclic_seen: HashSet<Vec<usize>> = HashSet::new();
    let mut cyclic_reps = Vec::new();
    for g in 1..order {
        let mut members = vec![0];
        let mut x = g;
        while x != 0 {
            members.push(x);
            x = mul(x, g);
        }
        members.sort_unstable();
        if cyclic_seen.insert(members) {
            cyclic_reps.push(g);
        }
    }

    let closure = |gens: &[usize]| -> Vec<usize> {
        let mut seen = vec![false; order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..order).filter(|&i| seen[i]).collect()
    };

    let mut found: HashSet<Vec<usize>> = HashSet::from([vec![0]]);
    let mut queue: VecDeque<(Vec<usize>, Vec<usize>)> = VecDeque::from([(vec![0], vec![])]);
    while let Some((members, gens)) = queue.pop_front() {
        for &g in &cyclic_reps {
            if members.binary_search(&g).is_ok() {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(g);
            let next = closure(&next_gens);
            if !found.contains(&next) {
                found.insert(next.clone());
                if found.len() > MAX_SUBGROUP_COUNT {
                    return Err(Error::Size(format!(
                        "more than {MAX_SUBGROUP_COUNT} subgroups"
                    )));
                }
                queue.push_back((next, next_gens));
            }
        }
    }

    let mut subgroups: Vec<Subgroup> = found
        .into_iter()
        .map(|members| Subgroup {
            parent_order: order,
            members,
        })
        .collect();
    subgroups.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
    Ok(subgroups)
}

/// A homomorphism between two constructed groups, with its kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source_order: usize,
    target_order: usize,
    images: Vec<usize>,
    kernel: Subgroup,
}

impl GroupHom {
    /// Image index of source element `x`.
    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn is_injective(&self) -> bool {
        self.kernel.is_trivial()
    }

    pub fn source_order(&self) -> usize {
        self.source_order
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    /// Size of the image subgroup.
    pub fn image_size(&self) -> usize {
        self.source_order / self.kernel.len()
    }

    /// Checks `π(xy) = π(x)π(y)` on all pairs.
    pub fn is_homomorphism(&self, source: &CoxeterGroup, target: &CoxeterGroup) -> bool {
        (0..source.order()).all(|x| {
            (0..source.order()).all(|y| {
                self.images[source.mul(x, y)] == target.mul(self.images[x], self.images[y])
            })
        })
    }
}

/// All homomorphisms `source → target`, optionally pinned at one element
/// and optionally restricted to injective maps, sorted by image array.
///
/// Generator images are searched among the target's elements of order at
/// most two subject to the Coxeter relations; each candidate is extended
/// along the Cayley graph and verified against the full multiplication
/// table.
pub fn enumerate_homomorphisms(
    source: &CoxeterGroup,
    target: &CoxeterGroup,
    pin: Option<(usize, usize)>,
    injective_only: bool,
) -> Result<Vec<GroupHom>> {
    let r = source.rank();
    let search = (target.order() as u64).checked_pow(r as u32);
    if search.is_none_or(|s| s > MAX_HOM_SEARCH) {
        return Err(Error::Size(format!(
            "|W2|^r = {}^{r} exceeds {MAX_HOM_SEARCH}",
            target.order()
        )));
    }
    if source.order() > MAX_HOM_SOURCE_ORDER {
        return Err(Error::Size(format!(
            "source order {} exceeds {MAX_HOM_SOURCE_ORDER}",
            source.order()
        )));
    }
    if let Some((a, b)) = pin {
        if a >= source.order() || b >= target.order() {
            return Err(Error::Domain("pinned element index out of range".into()));
        }
    }
    if injective_only && source.order() > target.order() {
        return Ok(Vec::new());
    }

    let source_gens = source.generator_indices();
    let candidates: Vec<usize> = (0..target.order())
        .filter(|&t| target.mul(t, t) == target.identity())
        .collect();

    // Cayley-graph spanning tree: parent[y] = (x, k) with y = s_k * x.
    let mut tree: Vec<(usize, usize, usize)> = Vec::with_capacity(source.order());
    {
        let mut seen = vec![false; source.order()];
        seen[source.identity()] = true;
        let mut queue = VecDeque::from([source.identity()]);
        while let Some(x) = queue.pop_front() {
            for (k, &s) in source_gens.iter().enumerate() {
                let y = source.mul(s, x);
                if !seen[y] {
                    seen[y] = true;
                    tree.push((y, x, k));
                    queue.push_back(y);
                }
            }
        }
    }
    let source_table = source.multiplication_table();
    let target_table = target.multiplication_table();
    let n_src = source.order();
    let n_tgt = target.order();
    let tmul = |a: usize, b: usize| target_table[a * n_tgt + b] as usize;

    let mut out = Vec::new();
    let mut choice = vec![0usize; r];
    loop {
        let gen_images: Vec<usize> = choice.iter().map(|&c| candidates[c]).collect();
        if relations_hold(source, target, &gen_images) {
            if let Some(images) = extend(&tree, &gen_images, n_src, target.identity(), &tmul) {
                let consistent = (0..n_src).all(|x| {
                    (0..n_src).all(|y| {
                        images[source_table[x * n_src + y] as usize] == tmul(images[x], images[y])
                    })
                });
                let pinned = pin.is_none_or(|(a, b)| images[a] == b);
                if consistent && pinned {
                    let kernel = Subgroup {
                        parent_order: n_src,
                        members: (0..n_src).filter(|&x| images[x] == target.identity()).collect(),
                    };
                    if !injective_only || kernel.is_trivial() {
                        out.push(GroupHom {
                            source_order: n_src,
                            target_order: n_tgt,
                            images,
                            kernel,
                        });
                    }
                }
            }
        }
        // odometer over candidate tuples
        let mut k = 0;
        loop {
            if k == r {
                out.sort_by(|a, b| a.images.cmp(&b.images));
                return Ok(out);
            }
            choice[k] += 1;
            if choice[k] < candidates.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn relations_hold(source: &CoxeterGroup, target: &CoxeterGroup, gen_images: &[usize]) -> bool {
    let m = source.coxeter_matrix();
    for i in 0..gen_images.len() {
        for j in i + 1..gen_images.len() {
            let prod = target.mul(gen_images[i], gen_images[j]);
            let mut power = target.identity();
            for _ in 0..m[i][j] {
                power = target.mul(power, prod);
            }
            if power != target.identity() {
                return false;
            }
        }
    }
    true
}

fn extend(
    tree: &[(usize, usize, usize)],
    gen_images: &[usize],
    n_src: usize,
    target_identity: usize,
    tmul: &impl Fn(usize, usize) -> usize,
) -> Option<Vec<usize>> {
    let mut images = vec![usize::MAX; n_src];
    images[0] = target_identity;
    for &(y, x, k) in tree {
        images[y] = tmul(gen_images[k], images[x]);
    }
    images.iter().all(|&i| i != usize::MAX).then_some(images)
}
