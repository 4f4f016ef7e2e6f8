//! The represented derivator of `Vect_Q`: diagrams, restriction, pointwise
//! Kan extensions, mates, shifts, sampling and the axiom checks.

mod axioms;
mod corpus;
mod diagram;
mod kan;
mod mate;
mod sample;
mod view;

pub use axioms::{
    check_axioms, der1, der2, der3, der4, der4_left_square, der4_right_square, Axiom,
    AxiomReport,
};
pub use corpus::Corpus;
pub use diagram::{Diagram, DiagramMap};
pub use kan::{
    kan, lan, lan_counit, lan_map, lan_unit, pullback, pullback_cell, pullback_map, ran,
    ran_counit, ran_map, ran_unit, KanPlan, KanResult, KanSide,
};
pub use mate::{cell_from_mate, mate_component, mate_input_shape, mate_pasting_check, MateSide};
pub use sample::{
    hom_space, random_diagram, random_invertible, random_isomorphic, random_map, random_matrix,
    Policy,
};
pub use view::{product_cached, DerivatorView};

#[cfg(test)]
mod tests;
