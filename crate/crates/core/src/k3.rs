//! The K3 lattice `U³ ⊕ E8²` with blocks `(v, u, u', e, e')` and the three
//! standard involutions acting on it.

use crate::lattice::{parse, Lattice};
use crate::linalg::IMat;

/// Block offsets of `v, u, u', e, e'` in the K3 lattice basis.
pub const V: usize = 0;
pub const U1: usize = 2;
pub const U2: usize = 4;
pub const E1: usize = 6;
pub const E2: usize = 14;

pub fn k3_lattice() -> Lattice {
    parse("U+U+U+E8+E8").expect("static expression").with_label("L")
}

/// Block action: for each target block, (source block, sign).
fn block_map(spec: [(usize, i64); 5]) -> IMat {
    let starts = [V, U1, U2, E1, E2];
    let sizes = [2, 2, 2, 8, 8];
    let mut m = IMat::zeros(22, 22);
    for (tb, &(sb, sign)) in spec.iter().enumerate() {
        // image of source block sb lands in target block tb
        for k in 0..sizes[tb] {
            m[(starts[tb] + k, starts[sb] + k)] = sign;
        }
    }
    m
}

/// `(v,u,u',e,e') ↦ (−v, u', u, −e, −e')`.
pub fn i_dp() -> IMat {
    block_map([(0, -1), (2, 1), (1, 1), (3, -1), (4, -1)])
}

/// `(v,u,u',e,e') ↦ (−v, u', u, e', e)`.
pub fn i_en() -> IMat {
    block_map([(0, -1), (2, 1), (1, 1), (4, 1), (3, 1)])
}

/// `(v,u,u',e,e') ↦ (v, u, u', −e', −e)`.
pub fn i_nik() -> IMat {
    block_map([(0, 1), (1, 1), (2, 1), (4, -1), (3, -1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involutions_commute() {
        let l = k3_lattice();
        for g in [i_dp(), i_en(), i_nik()] {
            assert!(l.is_involution(&g));
        }
        assert_eq!(i_dp().mul(&i_en()), i_en().mul(&i_dp()));
        assert_eq!(i_dp().mul(&i_en()), i_nik());
    }
}
