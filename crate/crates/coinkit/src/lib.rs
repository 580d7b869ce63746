//! Exact solvers for three coin-flavored problems: all-targets and
//! single-target change-making, all-capacities and single-capacity unbounded
//! knapsack, and minimum word break. Every fast solver has an independent
//! baseline or brute-force oracle next to it.

pub mod baseline;
pub mod conv;
pub mod cost;
pub mod error;
pub mod heavy_light;
pub mod instance;
pub mod knapsack;
pub mod single_target;
pub mod top_k;
pub mod word_break;

pub use cost::{BinaryCostArray, BoolArray, Cost, CostArray, ProfitArray};
pub use error::{Error, Result};
pub use instance::{CoinSet, KnapsackInstance, KnapsackItem, RankedCoins, RatioRankedItems};
pub use word_break::WordBreakInstance;
