//! Generation-stepping engines for the knapsack, MAX-SAT and TSP variants of
//! the elitist (μ+λ) EA.

mod engine;
mod mutation;

pub use engine::{
    run_ea, step_generation, step_generation_detailed, Fht, GenerationEvent, OffspringFate,
    OffspringRecord, RunOutcome, StepReport,
};
pub use mutation::{mutate_bitflip, mutate_poisson_2opt, poisson_2opt_counted};
