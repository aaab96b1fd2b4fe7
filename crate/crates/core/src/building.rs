//! Type-A spherical buildings over prime fields.
//!
//! A chamber is a complete flag `E_1 ⊂ … ⊂ E_{n-1}` in `F_q^n` (`E_0` and
//! `E_n` are implicit). Two chambers are opposite when their relative
//! position is the longest element of `S_n`; opposite pairs correspond
//! bijectively to frames, ordered `n`-tuples of lines spanning `F_q^n`, via
//!
//! ```text
//! (ℓ_1, …, ℓ_n) ↦ ((ℓ_1, ℓ_1⊕ℓ_2, …), (ℓ_n, ℓ_n⊕ℓ_{n-1}, …))
//! ```
//!
//! `S_n` acts on frames on the left by `(w·ℓ)_i = ℓ_{w⁻¹(i)}`, and through
//! the bijection on opposite pairs.

use std::collections::HashMap;
use std::fmt;

use crate::coxeter::{CoxeterGroup, GroupElement};
use crate::galois::PairAction;
use crate::partition::{DisjointSets, Partition};
use crate::subspace::{is_prime, unit_vector, Matrix, Subspace};
use crate::{Error, Result};

/// Largest ambient dimension for chamber enumeration.
pub const MAX_DIM: usize = 4;
/// Largest field size for chamber enumeration.
pub const MAX_FIELD: u32 = 5;
/// Cap on the number of opposite pairs materialized by a [`FlagModel`].
pub const MAX_OPPOSITE_PAIRS: usize = 200_000;
/// Cap on `|chambers|²` for orbit counting.
pub const MAX_CHAMBER_PAIRS: usize = 5_000_000;

fn check_params(n: usize, q: u32) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::Domain(format!("q = {q} is not prime")));
    }
    if n == 0 {
        return Err(Error::Domain("ambient dimension must be at least 1".into()));
    }
    if n > MAX_DIM || q > MAX_FIELD {
        return Err(Error::Size(format!(
            "(n, q) = ({n}, {q}) exceeds the caps n <= {MAX_DIM}, q <= {MAX_FIELD}"
        )));
    }
    Ok(())
}

/// `∏_{i=1}^{n} (q^i − 1)/(q − 1)`, the number of complete flags in `F_q^n`.
pub fn gaussian_factorial(n: usize, q: u64) -> u64 {
    (1..=n as u32).map(|i| (q.pow(i) - 1) / (q - 1)).product()
}

/// A complete flag in `F_q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chamber {
    n: usize,
    q: u32,
    flag: Vec<Subspace>,
}

impl Chamber {
    /// Validates dimensions and strict nesting of `E_1, …, E_{n-1}`.
    pub fn new(n: usize, q: u32, flag: Vec<Subspace>) -> Result<Self> {
        if flag.len() + 1 != n {
            return Err(Error::Domain(format!(
                "a chamber in dimension {n} has {} proper subspaces, got {}",
                n.saturating_sub(1),
                flag.len()
            )));
        }
        for (i, e) in flag.iter().enumerate() {
            if e.ambient_dim() != n || e.modulus() != q {
                return Err(Error::Domain("flag subspace in the wrong ambient space".into()));
            }
            if e.dim() != i + 1 {
                return Err(Error::Invariant(format!("E_{} has dimension {}", i + 1, e.dim())));
            }
            if i > 0 && !flag[i - 1].is_subspace_of(e)? {
                return Err(Error::Invariant(format!("E_{i} is not contained in E_{}", i + 1)));
            }
        }
        Ok(Self { n, q, flag })
    }

    /// `E_i = ⟨e_1, …, e_i⟩`.
    pub fn standard(n: usize, q: u32) -> Self {
        Self::from_vectors_unchecked(n, q, (0..n).map(|i| unit_vector(n, i)).collect())
    }

    /// `E_i = ⟨e_n, …, e_{n+1-i}⟩`.
    pub fn reversed_standard(n: usize, q: u32) -> Self {
        Self::from_vectors_unchecked(n, q, (0..n).rev().map(|i| unit_vector(n, i)).collect())
    }

    fn from_vectors_unchecked(n: usize, q: u32, vectors: Vec<Vec<u8>>) -> Self {
        let flag = (1..n).map(|i| Subspace::span(n, q, &vectors[..i])).collect();
        Self { n, q, flag }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    /// `E_i` for `0 <= i <= n`.
    pub fn subspace(&self, i: usize) -> Subspace {
        match i {
            0 => Subspace::zero(self.n, self.q),
            i if i == self.n => Subspace::full(self.n, self.q),
            i => self.flag[i - 1].clone(),
        }
    }

    /// The stored proper subspaces `E_1, …, E_{n-1}`.
    pub fn flag(&self) -> &[Subspace] {
        &self.flag
    }

    pub fn transform(&self, g: &Matrix) -> Result<Self> {
        let flag = self.flag.iter().map(|e| e.transform(g)).collect::<Result<_>>()?;
        Ok(Self {
            n: self.n,
            q: self.q,
            flag,
        })
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.q != other.q {
            return Err(Error::Domain(format!(
                "chambers over F_{}^{} and F_{}^{}",
                self.q, self.n, other.q, other.n
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<String>())
            .collect();
        write!(f, "<{}>", rows.join(","))
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.flag.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(" < "))
    }
}

/// An ordered `n`-tuple of lines whose sum is `F_q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frame {
    n: usize,
    q: u32,
    lines: Vec<Subspace>,
}

impl Frame {
    pub fn new(n: usize, q: u32, lines: Vec<Subspace>) -> Result<Self> {
        if lines.len() != n {
            return Err(Error::Domain(format!("a frame has {n} lines, got {}", lines.len())));
        }
        if lines.iter().any(|l| l.dim() != 1 || l.ambient_dim() != n || l.modulus() != q) {
            return Err(Error::Domain("frame entries must be lines of F_q^n".into()));
        }
        let vectors: Vec<Vec<u8>> = lines.iter().map(|l| l.rows()[0].clone()).collect();
        if Subspace::span(n, q, &vectors).dim() != n {
            return Err(Error::Invariant("frame lines are linearly dependent".into()));
        }
        Ok(Self { n, q, lines })
    }

    /// `(⟨e_1⟩, …, ⟨e_n⟩)`.
    pub fn standard(n: usize, q: u32) -> Self {
        Self {
            n,
            q,
            lines: (0..n).map(|i| Subspace::coordinate_line(n, q, i)).collect(),
        }
    }

    pub fn lines(&self) -> &[Subspace] {
        &self.lines
    }

    /// `(w·ℓ)_i = ℓ_{w⁻¹(i)}`.
    pub fn permute(&self, w: &GroupElement) -> Result<Self> {
        if w.degree() != self.n {
            return Err(Error::Domain(format!(
                "permutation of degree {} acting on a frame of size {}",
                w.degree(),
                self.n
            )));
        }
        let inv = w.inverse();
        Ok(Self {
            n: self.n,
            q: self.q,
            lines: (0..self.n).map(|i| self.lines[inv.apply(i)].clone()).collect(),
        })
    }
}

/// The Bruhat index of a pair of chambers, a permutation in `S_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelativePosition(pub GroupElement);

impl RelativePosition {
    pub fn permutation(&self) -> &GroupElement {
        &self.0
    }

    /// Coxeter length (inversion count).
    pub fn length(&self) -> usize {
        self.0.inversions()
    }
}

/// Every complete flag of `F_q^n`, sorted lexicographically by the
/// concatenated echelon bases.
pub fn enumerate_chambers(n: usize, q: u32) -> Result<Vec<Chamber>> {
    check_params(n, q)?;
    let mut partial: Vec<Vec<Subspace>> = vec![Vec::new()];
    for _ in 1..n {
        let mut next = Vec::new();
        for flag in &partial {
            let top = flag.last().cloned().unwrap_or_else(|| Subspace::zero(n, q));
            for ext in top.one_step_extensions() {
                let mut f = flag.clone();
                f.push(ext);
                next.push(f);
            }
        }
        partial = next;
    }
    let mut chambers: Vec<Chamber> = partial
        .into_iter()
        .map(|flag| Chamber { n, q, flag })
        .collect();
    chambers.sort();
    Ok(chambers)
}

fn intersection_dims(e: &Chamber, f: &Chamber) -> Result<Vec<Vec<usize>>> {
    e.same_ambient(f)?;
    let n = e.n;
    let es: Vec<Subspace> = (0..=n).map(|i| e.subspace(i)).collect();
    let fs: Vec<Subspace> = (0..=n).map(|j| f.subspace(j)).collect();
    let mut dims = vec![vec![0; n + 1]; n + 1];
    for i in 0..=n {
        for j in 0..=n {
            dims[i][j] = match (i, j) {
                (0, _) | (_, 0) => 0,
                (i, j) if i == n => j,
                (i, j) if j == n => i,
                _ => es[i].intersection_dim(&fs[j])?,
            };
        }
    }
    Ok(dims)
}

/// The unique `w ∈ S_n` with `dim(E_i ∩ F_j) = #{k ≤ j : w(k) ≤ i}`.
pub fn relative_position(e: &Chamber, f: &Chamber) -> Result<RelativePosition> {
    let d = intersection_dims(e, f)?;
    let n = e.n;
    let mut images = Vec::with_capacity(n);
    for k in 1..=n {
        let jumps: Vec<usize> = (1..=n)
            .filter(|&i| d[i][k] + d[i - 1][k - 1] == d[i - 1][k] + d[i][k - 1] + 1)
            .collect();
        match jumps.as_slice() {
            [i] => images.push(i - 1),
            _ => return Err(Error::Invariant("intersection dimensions are not a permutation".into())),
        }
    }
    Ok(RelativePosition(GroupElement::from_images(images)?))
}

/// Whether `dim(E_i ∩ F_{n−i}) = 0` for every `i`.
pub fn is_opposite(e: &Chamber, f: &Chamber) -> Result<bool> {
    e.same_ambient(f)?;
    let n = e.n;
    for i in 1..n {
        if e.flag[i - 1].intersection_dim(&f.flag[n - i - 1])? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ℓ_i = E_i ∩ F_{n+1−i}` for an opposite pair.
pub fn frame_of(e: &Chamber, f: &Chamber) -> Result<Frame> {
    if !is_opposite(e, f)? {
        return Err(Error::Precondition("frame_of needs an opposite pair".into()));
    }
    let n = e.n;
    let lines = (1..=n)
        .map(|i| e.subspace(i).intersection(&f.subspace(n + 1 - i)))
        .collect::<Result<Vec<_>>>()?;
    if lines.iter().any(|l| l.dim() != 1) {
        return Err(Error::Invariant("opposite pair produced a non-line".into()));
    }
    Ok(Frame { n, q: e.q, lines })
}

/// `E_i = ℓ_1 ⊕ … ⊕ ℓ_i`, `F_i = ℓ_n ⊕ … ⊕ ℓ_{n+1−i}`.
pub fn big_cell_map(frame: &Frame) -> Result<(Chamber, Chamber)> {
    let (n, q) = (frame.n, frame.q);
    let vectors: Vec<Vec<u8>> = frame.lines.iter().map(|l| l.rows()[0].clone()).collect();
    if Subspace::span(n, q, &vectors).dim() != n {
        return Err(Error::Invariant("frame lines are linearly dependent".into()));
    }
    let reversed: Vec<Vec<u8>> = vectors.iter().rev().cloned().collect();
    Ok((
        Chamber::from_vectors_unchecked(n, q, vectors),
        Chamber::from_vectors_unchecked(n, q, reversed),
    ))
}

/// `w·(E, F)` through the frame bijection.
pub fn weyl_action(w: &GroupElement, pair: (&Chamber, &Chamber)) -> Result<(Chamber, Chamber)> {
    big_cell_map(&frame_of(pair.0, pair.1)?.permute(w)?)
}

/// The chambers of `F_q^n` with a lookup index.
#[derive(Debug, Clone)]
pub struct Building {
    n: usize,
    q: u32,
    chambers: Vec<Chamber>,
    index: HashMap<Chamber, usize>,
}

impl Building {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        let chambers = enumerate_chambers(n, q)?;
        let index = chambers.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        Ok(Self { n, q, chambers, index })
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    pub fn chamber(&self, i: usize) -> &Chamber {
        &self.chambers[i]
    }

    pub fn index_of(&self, c: &Chamber) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// The chamber permutation induced by an invertible matrix.
    pub fn matrix_permutation(&self, g: &Matrix) -> Result<Vec<usize>> {
        if !g.is_invertible() {
            return Err(Error::Domain("matrix is not invertible".into()));
        }
        self.chambers
            .iter()
            .map(|c| {
                let image = c.transform(g)?;
                self.index_of(&image)
                    .ok_or_else(|| Error::Invariant("image chamber not enumerated".into()))
            })
            .collect()
    }

    /// Partition of chambers by `(E_j)_{j ∈ J}`, `J ⊆ {1, …, n−1}`.
    pub fn partial_flag_quotient(&self, face_type: &[usize]) -> Result<Partition> {
        validate_type(self.n, face_type)?;
        Ok(Partition::from_labels(self.chambers.iter().map(|c| {
            face_type.iter().map(|&j| c.flag[j - 1].clone()).collect::<Vec<_>>()
        })))
    }

    /// Orbits of the diagonal `GL_n(F_q)` action on pairs of chambers.
    pub fn diagonal_orbit_count(&self) -> Result<usize> {
        let len = self.len();
        if len * len > MAX_CHAMBER_PAIRS {
            return Err(Error::Size(format!(
                "{len}^2 chamber pairs exceed the cap {MAX_CHAMBER_PAIRS}"
            )));
        }
        let perms = Matrix::gl_generators(self.n, self.q)
            .iter()
            .map(|g| self.matrix_permutation(g))
            .collect::<Result<Vec<_>>>()?;
        let mut sets = DisjointSets::new(len * len);
        for perm in &perms {
            for a in 0..len {
                for b in 0..len {
                    sets.union(a * len + b, perm[a] * len + perm[b]);
                }
            }
        }
        Ok(sets.component_count())
    }

    /// Number of `F` in each relative position to `E`, keyed by position.
    pub fn cell_sizes(&self, e: usize) -> Result<HashMap<RelativePosition, usize>> {
        let mut out = HashMap::new();
        for f in &self.chambers {
            *out.entry(relative_position(&self.chambers[e], f)?).or_default() += 1;
        }
        Ok(out)
    }
}

/// All face types `J ⊆ {1, …, n−1}`, ordered by size then lexicographically.
pub fn face_types(n: usize) -> Vec<Vec<usize>> {
    let r = n.saturating_sub(1);
    let mut out: Vec<Vec<usize>> = (0u32..1 << r)
        .map(|mask| (1..=r).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

fn validate_type(n: usize, face_type: &[usize]) -> Result<()> {
    if face_type.iter().any(|&j| j == 0 || j >= n) || face_type.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain(format!(
            "face type {face_type:?} must be a strictly increasing subset of 1..{}",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

/// A building together with `S_n` acting on its opposite pairs.
#[derive(Debug, Clone)]
pub struct FlagModel {
    building: Building,
    action: PairAction,
}

impl FlagModel {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        check_params(n, q)?;
        let expected_pairs =
            gaussian_factorial(n, q as u64) as usize * (q as usize).pow((n * (n - 1) / 2) as u32);
        if expected_pairs > MAX_OPPOSITE_PAIRS {
            return Err(Error::Size(format!(
                "{expected_pairs} opposite pairs exceed the cap {MAX_OPPOSITE_PAIRS}"
            )));
        }
        let building = Building::new(n, q)?;
        let len = building.len();
        let mut domain = Vec::new();
        for (i, e) in building.chambers.iter().enumerate() {
            for (j, f) in building.chambers.iter().enumerate() {
                if is_opposite(e, f)? {
                    domain.push((i, j));
                }
            }
        }
        let pair_index: HashMap<(usize, usize), usize> =
            domain.iter().enumerate().map(|(d, &p)| (p, d)).collect();
        let group = CoxeterGroup::symmetric(n)?;
        let frames = domain
            .iter()
            .map(|&(i, j)| frame_of(&building.chambers[i], &building.chambers[j]))
            .collect::<Result<Vec<_>>>()?;
        let mut generator_actions = Vec::with_capacity(group.rank());
        for s in group.generators() {
            let action = frames
                .iter()
                .map(|frame| {
                    let (e, f) = big_cell_map(&frame.permute(s)?)?;
                    let key = (
                        building.index_of(&e).expect("enumerated"),
                        building.index_of(&f).expect("enumerated"),
                    );
                    pair_index
                        .get(&key)
                        .copied()
                        .ok_or_else(|| Error::Invariant("Weyl image is not an opposite pair".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            generator_actions.push(action);
        }
        let action = PairAction::from_generators(len, domain, group, generator_actions)?;
        Ok(Self { building, action })
    }

    pub fn building(&self) -> &Building {
        &self.building
    }

    pub fn action(&self) -> &PairAction {
        &self.action
    }

    pub fn group(&self) -> &CoxeterGroup {
        self.action.group()
    }

    pub fn opposite_pairs(&self) -> &[(usize, usize)] {
        self.action.domain()
    }

    /// Domain index of the opposite pair `(e, f)`.
    pub fn pair_index(&self, e: usize, f: usize) -> Option<usize> {
        self.action.domain().binary_search(&(e, f)).ok()
    }

    pub fn is_opposite_index(&self, e: usize, f: usize) -> bool {
        self.pair_index(e, f).is_some()
    }

    /// `⟨s_i : i ∉ J⟩`, the standard Young subgroup attached to a face type.
    pub fn young_subgroup(&self, face_type: &[usize]) -> Result<crate::coxeter::Subgroup> {
        validate_type(self.building.n, face_type)?;
        let group = self.group();
        let gens: Vec<usize> = group
            .generator_indices()
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !face_type.contains(&(i + 1)))
            .map(|(_, g)| g)
            .collect();
        Ok(crate::coxeter::Subgroup::generated_by(group, &gens))
    }
}

/// `S_n` acting on the opposite pairs of chambers of `F_q^n`.
pub fn opposite_pair_action(n: usize, q: u32) -> Result<PairAction> {
    Ok(FlagModel::new(n, q)?.action)
}

/// Partition of the chambers of `F_q^n` by type-`J` faces.
pub fn partial_flag_quotient(n: usize, q: u32, face_type: &[usize]) -> Result<Partition> {
    validate_type(n, face_type)?;
    Building::new(n, q)?.partial_flag_quotient(face_type)
}

/// Orbits of `GL_n(F_q)` on pairs of chambers.
pub fn diagonal_orbit_count(n: usize, q: u32) -> Result<usize> {
    Building::new(n, q)?.diagonal_orbit_count()
}
