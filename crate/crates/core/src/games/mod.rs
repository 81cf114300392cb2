//! Game definitions, strategies, and value computations.
//!
//! [`strategy`] holds the challenge/answer bookkeeping and the strategy
//! types, [`eval`] computes exact winning probabilities, and [`simulate`]
//! estimates them by seeded sampling.

pub mod eval;
pub mod simulate;
pub mod strategy;

pub use eval::{
    avg_game_operator, game_value, gl_game_projector, gl_game_value_quantum,
    gl_game_value_semiclassical, gl_semiclassical_operator, outcome_projectors,
    p_opt_for_measurements, parity_bias, xor_game_value, xor_game_value_quantum,
    GameValueReport, ValueMethod,
};
pub use simulate::simulate_game;
pub use strategy::{
    strategy_from_json, strategy_to_json, AnswerTable, GameSpec, GameVariant,
    MeasurementFamilies, QuantumStrategy, SemiClassicalStrategy, Strategy, PROJ_TOL,
};
