//! Checks on maps between the chamber sets of two flag models of equal rank:
//! opposition preservation, equivariance for the Weyl action on opposite
//! pairs, and descent to maps of partial flags.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::building::{face_types, FlagModel};
use crate::partition::Partition;
use crate::subspace::Matrix;
use crate::{Error, Result};

/// A total map from the chambers of one flag model to those of another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberMap {
    source: (usize, u32),
    target: (usize, u32),
    images: Vec<usize>,
}

impl ChamberMap {
    pub fn new(source: &FlagModel, target: &FlagModel, images: Vec<usize>) -> Result<Self> {
        let (src, tgt) = (source.building(), target.building());
        if images.len() != src.len() {
            return Err(Error::Domain(format!(
                "map defined on {} chambers, source has {}",
                images.len(),
                src.len()
            )));
        }
        if images.iter().any(|&i| i >= tgt.len()) {
            return Err(Error::Domain("target chamber index out of range".into()));
        }
        Ok(Self {
            source: (src.ambient_dim(), src.modulus()),
            target: (tgt.ambient_dim(), tgt.modulus()),
            images,
        })
    }

    pub fn identity(model: &FlagModel) -> Self {
        let b = model.building();
        Self {
            source: (b.ambient_dim(), b.modulus()),
            target: (b.ambient_dim(), b.modulus()),
            images: (0..b.len()).collect(),
        }
    }

    /// `E ↦ g·E` for an invertible matrix `g`.
    pub fn from_matrix(model: &FlagModel, g: &Matrix) -> Result<Self> {
        let b = model.building();
        if g.dim() != b.ambient_dim() || g.modulus() != b.modulus() {
            return Err(Error::Domain("matrix does not act on this building".into()));
        }
        Ok(Self {
            source: (b.ambient_dim(), b.modulus()),
            target: (b.ambient_dim(), b.modulus()),
            images: b.matrix_permutation(g)?,
        })
    }

    /// A uniformly random permutation of the chambers, from a seeded stream.
    pub fn random_permutation(model: &FlagModel, seed: u64) -> Self {
        let b = model.building();
        let mut images: Vec<usize> = (0..b.len()).collect();
        images.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Self {
            source: (b.ambient_dim(), b.modulus()),
            target: (b.ambient_dim(), b.modulus()),
            images,
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, chamber: usize) -> usize {
        self.images[chamber]
    }

    fn check_models(&self, source: &FlagModel, target: &FlagModel) -> Result<()> {
        let s = (source.building().ambient_dim(), source.building().modulus());
        let t = (target.building().ambient_dim(), target.building().modulus());
        if s != self.source || t != self.target {
            return Err(Error::Domain("chamber map used with the wrong models".into()));
        }
        if s.0 != t.0 {
            return Err(Error::Domain(format!(
                "source rank {} differs from target rank {}",
                s.0 - 1,
                t.0 - 1
            )));
        }
        Ok(())
    }
}

/// The first witness that a chamber map fails a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The opposite source pair `(e, f)` maps to a non-opposite pair.
    NotOpposite { e: usize, f: usize },
    /// `φ(w·(e, f)) ≠ w·φ(e, f)`; `w` indexes the Weyl group.
    NotEquivariant { w: usize, e: usize, f: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotOpposite { e, f: g } => {
                write!(f, "opposite pair ({e}, {g}) maps to a non-opposite pair")
            }
            Violation::NotEquivariant { w, e, f: g } => {
                write!(f, "Weyl element #{w} does not commute with the map on pair ({e}, {g})")
            }
        }
    }
}

/// First opposite source pair whose image is not opposite, if any.
pub fn find_opposition_violation(
    source: &FlagModel,
    target: &FlagModel,
    map: &ChamberMap,
) -> Result<Option<Violation>> {
    map.check_models(source, target)?;
    Ok(source
        .opposite_pairs()
        .iter()
        .find(|&&(e, f)| !target.is_opposite_index(map.image(e), map.image(f)))
        .map(|&(e, f)| Violation::NotOpposite { e, f }))
}

pub fn check_opposition_preserving(
    source: &FlagModel,
    target: &FlagModel,
    map: &ChamberMap,
) -> Result<bool> {
    Ok(find_opposition_violation(source, target, map)?.is_none())
}

/// First `(w, pair)` where `φ×φ` fails to commute with the Weyl action.
///
/// Requires opposition preservation.
pub fn find_equivariance_violation(
    source: &FlagModel,
    target: &FlagModel,
    map: &ChamberMap,
) -> Result<Option<Violation>> {
    if let Some(v) = find_opposition_violation(source, target, map)? {
        return Err(Error::Precondition(format!(
            "equivariance needs an opposition-preserving map: {v}"
        )));
    }
    let (sa, ta) = (source.action(), target.action());
    let target_pairs = target.opposite_pairs();
    for w in 0..sa.group().order() {
        for (d, &(e, f)) in source.opposite_pairs().iter().enumerate() {
            let (e2, f2) = source.opposite_pairs()[sa.act(w, d)];
            let lhs = (map.image(e2), map.image(f2));
            let image = target
                .pair_index(map.image(e), map.image(f))
                .expect("opposition already checked");
            let rhs = target_pairs[ta.act(w, image)];
            if lhs != rhs {
                return Ok(Some(Violation::NotEquivariant { w, e, f }));
            }
        }
    }
    Ok(None)
}

pub fn check_w_equivariance(
    source: &FlagModel,
    target: &FlagModel,
    map: &ChamberMap,
) -> Result<bool> {
    Ok(find_equivariance_violation(source, target, map)?.is_none())
}

/// The map induced on type-`J` partial flags (blocks of the partial-flag
/// quotient, labeled as in [`Partition`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceMap {
    pub face_type: Vec<usize>,
    pub images: Vec<usize>,
}

/// Face maps for every face type, ordered as [`face_types`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceMaps {
    pub maps: Vec<FaceMap>,
}

impl FaceMaps {
    pub fn get(&self, face_type: &[usize]) -> Option<&FaceMap> {
        self.maps.iter().find(|m| m.face_type == face_type)
    }
}

/// Descends `φ` through every partial-flag quotient and checks that the
/// resulting maps commute with forgetting one more subspace.
///
/// Requires both checks above to pass.
pub fn induced_face_maps(
    source: &FlagModel,
    target: &FlagModel,
    map: &ChamberMap,
) -> Result<FaceMaps> {
    if find_equivariance_violation(source, target, map)?.is_some() {
        return Err(Error::Precondition("face maps need a Weyl-equivariant map".into()));
    }
    let n = source.building().ambient_dim();
    let types = face_types(n);
    let mut quotients: Vec<(Partition, Partition)> = Vec::with_capacity(types.len());
    let mut maps = Vec::with_capacity(types.len());
    for ty in &types {
        let sp = source.building().partial_flag_quotient(ty)?;
        let tp = target.building().partial_flag_quotient(ty)?;
        let mut images = vec![usize::MAX; sp.block_count()];
        let mut witness = vec![usize::MAX; sp.block_count()];
        for c in 0..sp.len() {
            let block = sp.block_of(c);
            let image = tp.block_of(map.image(c));
            if images[block] == usize::MAX {
                images[block] = image;
                witness[block] = c;
            } else if images[block] != image {
                return Err(Error::Structural(format!(
                    "chambers {} and {c} share their type-{ty:?} face but their images do not",
                    witness[block]
                )));
            }
        }
        maps.push(FaceMap {
            face_type: ty.clone(),
            images,
        });
        quotients.push((sp, tp));
    }
    // consecutive types: J ⊂ J' with |J'| = |J| + 1
    for (a, small) in types.iter().enumerate() {
        for (b, large) in types.iter().enumerate() {
            if large.len() != small.len() + 1 || !small.iter().all(|j| large.contains(j)) {
                continue;
            }
            let (sp_small, tp_small) = &quotients[a];
            let (sp_large, tp_large) = &quotients[b];
            for c in 0..sp_large.len() {
                // forget(φ_J'(face_J'(c))) vs φ_J(forget(face_J'(c)))
                let via_large = maps[b].images[sp_large.block_of(c)];
                let target_chamber = map.image(c);
                debug_assert_eq!(tp_large.block_of(target_chamber), via_large);
                let forgotten_image = tp_small.block_of(target_chamber);
                let image_of_forgotten = maps[a].images[sp_small.block_of(c)];
                if forgotten_image != image_of_forgotten {
                    return Err(Error::Structural(format!(
                        "face maps of types {small:?} and {large:?} disagree at chamber {c}"
                    )));
                }
            }
        }
    }
    Ok(FaceMaps { maps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> FlagModel {
        FlagModel::new(3, 2).unwrap()
    }

    #[test]
    fn identity_passes_everything() {
        let m = model();
        let id = ChamberMap::identity(&m);
        assert!(check_opposition_preserving(&m, &m, &id).unwrap());
        assert!(check_w_equivariance(&m, &m, &id).unwrap());
        let faces = induced_face_maps(&m, &m, &id).unwrap();
        for f in &faces.maps {
            assert!(f.images.iter().enumerate().all(|(i, &j)| i == j));
        }
    }

    #[test]
    fn matrix_maps_pass() {
        let m = model();
        let g = Matrix::parse(3, 2, "1 1 0  0 1 1  0 0 1").unwrap();
        let phi = ChamberMap::from_matrix(&m, &g).unwrap();
        assert!(check_opposition_preserving(&m, &m, &phi).unwrap());
        assert!(check_w_equivariance(&m, &m, &phi).unwrap());
        induced_face_maps(&m, &m, &phi).unwrap();
    }

    #[test]
    fn swapping_chambers_on_a_line_breaks_opposition() {
        let m = model();
        let b = m.building();
        let (x, y) = (0..b.len())
            .flat_map(|x| (x + 1..b.len()).map(move |y| (x, y)))
            .find(|&(x, y)| b.chamber(x).subspace(2) == b.chamber(y).subspace(2))
            .unwrap();
        let mut images: Vec<usize> = (0..b.len()).collect();
        images.swap(x, y);
        let phi = ChamberMap::new(&m, &m, images).unwrap();
        assert!(!check_opposition_preserving(&m, &m, &phi).unwrap());
        assert!(matches!(check_w_equivariance(&m, &m, &phi), Err(Error::Precondition(_))));
    }

    #[test]
    fn rank_mismatch() {
        let m3 = model();
        let m2 = FlagModel::new(2, 2).unwrap();
        let phi = ChamberMap::new(&m2, &m3, vec![0, 1, 2]).unwrap();
        assert!(matches!(check_opposition_preserving(&m2, &m3, &phi), Err(Error::Domain(_))));
    }

    #[test]
    fn constant_map_on_rank_one_fails() {
        let m = FlagModel::new(2, 3).unwrap();
        let phi = ChamberMap::new(&m, &m, vec![0; 4]).unwrap();
        assert_eq!(
            find_opposition_violation(&m, &m, &phi).unwrap(),
            Some(Violation::NotOpposite { e: 0, f: 1 })
        );
    }

    #[test]
    fn random_permutations_are_reproducible() {
        let m = model();
        assert_eq!(ChamberMap::random_permutation(&m, 9), ChamberMap::random_permutation(&m, 9));
        assert_ne!(ChamberMap::random_permutation(&m, 9), ChamberMap::random_permutation(&m, 10));
    }
}
