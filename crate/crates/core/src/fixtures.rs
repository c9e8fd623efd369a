//! Small algebras, modules and extensions used throughout the tests and the
//! acceptance suite.

use crate::extension::AbelianExtension;
use crate::scalar::Scalar;
use crate::superalg::{semidirect_product, LieSuperalgebra, ModuleAction, SuperBasis};

fn vector<T: Scalar>(xs: &[i64]) -> Vec<T> {
    xs.iter().map(|&x| T::from_int(x)).collect()
}

/// Heisenberg algebra `h3 = <x, y, z>`, all even, `[x, y] = z`.
pub fn heisenberg<T: Scalar>() -> LieSuperalgebra<T> {
    let basis = SuperBasis::even(["x", "y", "z"]).unwrap();
    LieSuperalgebra::from_brackets("h3", basis, &[(0, 1, vector(&[0, 0, 1]))]).unwrap()
}

/// `ba1 = <x | y, z>` with x even, y and z odd, `[x, y] = z`.
pub fn ba1<T: Scalar>() -> LieSuperalgebra<T> {
    let basis = SuperBasis::new([("x", 0), ("y", 1), ("z", 1)]).unwrap();
    LieSuperalgebra::from_brackets("ba1", basis, &[(0, 1, vector(&[0, 0, 1]))]).unwrap()
}

/// `e = <x, a1, a2>`, all even, `[x, a1] = a1`, `[x, a2] = a2`.
pub fn affine<T: Scalar>() -> LieSuperalgebra<T> {
    let basis = SuperBasis::even(["x", "a1", "a2"]).unwrap();
    LieSuperalgebra::from_brackets(
        "aff",
        basis,
        &[(0, 1, vector(&[0, 1, 0])), (0, 2, vector(&[0, 0, 1]))],
    )
    .unwrap()
}

/// `<t>` (even, abelian) acting as the identity on `Q^2 = <v1, v2>`.
pub fn sd_module<T: Scalar>() -> ModuleAction<T> {
    let t = LieSuperalgebra::abelian("t", SuperBasis::even(["t"]).unwrap());
    let space = SuperBasis::even(["v1", "v2"]).unwrap();
    ModuleAction::from_entries(
        t,
        space,
        &[(0, 0, vector(&[1, 0])), (0, 1, vector(&[0, 1]))],
    )
    .unwrap()
}

/// `<t>` (even) acting on the odd line `<w>` by `t.w = w`.
pub fn odd_line_module<T: Scalar>() -> ModuleAction<T> {
    let t = LieSuperalgebra::abelian("t", SuperBasis::even(["t"]).unwrap());
    let space = SuperBasis::new([("w", 1)]).unwrap();
    ModuleAction::from_entries(t, space, &[(0, 0, vector(&[1]))]).unwrap()
}

/// `Ab(2) = <t1, t2>` acting on the odd line `<w>` by `t1.w = w`, `t2.w = 0`.
pub fn odd_plane_module<T: Scalar>() -> ModuleAction<T> {
    let g = LieSuperalgebra::abelian("ab2", SuperBasis::even(["t1", "t2"]).unwrap());
    let space = SuperBasis::new([("w", 1)]).unwrap();
    ModuleAction::from_entries(g, space, &[(0, 0, vector(&[1]))]).unwrap()
}

/// `Ab(1|1) = <t | θ>` acting on `<m | w>` by `t.m = m`, `t.w = w`, `θ.m = w`.
pub fn mixed_module<T: Scalar>() -> ModuleAction<T> {
    let g = LieSuperalgebra::abelian("ab11", SuperBasis::new([("t", 0), ("θ", 1)]).unwrap());
    let space = SuperBasis::new([("m", 0), ("w", 1)]).unwrap();
    ModuleAction::from_entries(
        g,
        space,
        &[
            (0, 0, vector(&[1, 0])),
            (0, 1, vector(&[0, 1])),
            (1, 0, vector(&[0, 1])),
        ],
    )
    .unwrap()
}

/// `0 -> <z> -> h3 -> Ab(2) -> 0`.
pub fn h3_extension<T: Scalar>() -> AbelianExtension<T> {
    AbelianExtension::build(&heisenberg(), &[2]).unwrap()
}

/// `0 -> <z> -> ba1 -> Ab(1|1) -> 0`.
pub fn ba1_extension<T: Scalar>() -> AbelianExtension<T> {
    AbelianExtension::build(&ba1(), &[2]).unwrap()
}

/// Split extension `0 -> Q^2 -> <t> ⋉ Q^2 -> <t> -> 0`.
pub fn sd_extension<T: Scalar>() -> AbelianExtension<T> {
    semidirect_product(&sd_module()).unwrap().1
}

/// `0 -> <a1, a2> -> aff -> <x> -> 0`.
pub fn affine_extension<T: Scalar>() -> AbelianExtension<T> {
    AbelianExtension::build(&affine(), &[1, 2]).unwrap()
}

/// Central split extension `0 -> <w> -> Ab(3) -> Ab(2) -> 0`.
pub fn ab3_extension<T: Scalar>() -> AbelianExtension<T> {
    let g = LieSuperalgebra::abelian("ab2", SuperBasis::even(["u", "v"]).unwrap());
    let module = ModuleAction::trivial(g, SuperBasis::even(["w"]).unwrap());
    semidirect_product(&module).unwrap().1
}

/// Split extension with an odd kernel: `0 -> <w> -> Ab(2) ⋉ <w> -> Ab(2) -> 0`.
pub fn odd_plane_extension<T: Scalar>() -> AbelianExtension<T> {
    semidirect_product(&odd_plane_module()).unwrap().1
}

/// Named corpus used by the sequence checks: `(name, extension)`.
pub fn corpus<T: Scalar>() -> Vec<(&'static str, AbelianExtension<T>)> {
    vec![
        ("h3", h3_extension()),
        ("ba1", ba1_extension()),
        ("sd", sd_extension()),
        ("aff", affine_extension()),
    ]
}
