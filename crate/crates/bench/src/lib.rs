//! Fixtures shared by the benches.

use num_complex::Complex64;
use talex_core::repvariety::{parabolic_rep, parabolic_slice_j, riley_poly_c};
use talex_core::twisted::RepAssignment;
use talex_core::{FamilyKind, FamilySpec, Orientation, Presentation};

pub struct Instance {
    pub family: FamilySpec,
    pub pres: Presentation,
    pub rep: RepAssignment,
    pub z: Complex64,
}

/// The nonreal parabolic root with the largest imaginary part.
pub fn instance(family: FamilySpec, orientation: Orientation) -> Instance {
    let data = match family.kind {
        FamilyKind::J => parabolic_slice_j(family.m, family.n, 1e-9),
        FamilyKind::C => riley_poly_c(family.m, family.n, family.p, 1e-9),
    }
    .expect("roots");
    let z = data
        .roots
        .iter()
        .map(|r| r.value)
        .max_by(|a, b| a.im.total_cmp(&b.im))
        .expect("a root");
    let pres = family.presentation(orientation);
    let rep = RepAssignment::for_presentation(&pres, parabolic_rep(z).mats().to_vec(), 1e-6)
        .expect("rep");
    Instance {
        family,
        pres,
        rep,
        z,
    }
}
