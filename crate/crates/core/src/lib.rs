//! Seeded Monte Carlo link-level simulator for UAV-aided maritime networks.
//!
//! The crate models a search-and-rescue deployment over the sea: a single
//! UAV serves two clusters of users (rescuees and rescuers) while a shore
//! station provides its backhaul or fronthaul. Three UAV roles — relay,
//! flying base station, flying remote radio head — are combined with five
//! candidate shore-link technologies, and each combination is scored on
//! delivered data rate, end-to-end latency and payload weight. A weighted
//! cost function over normalized attributes ranks the combinations.
//!
//! Modules follow the pipeline:
//!
//! * [`channel`] — two-ray and free-space path loss, noise, SNR
//! * [`linktech`] — capacity calculators for the five shore-link options
//! * [`architecture`] — access sharing, rate bottleneck, latency, weight
//! * [`scenario`] — seeded sampling of the maritime geometry
//! * [`evaluator`] — the Monte Carlo engine over all combinations
//! * [`costrank`] — min-max normalization and weighted-sum ranking

pub mod architecture;
pub mod channel;
pub mod costrank;
pub mod error;
pub mod evaluator;
pub mod linktech;
pub mod scenario;

pub use architecture::{
    access_rate_per_user, core_to_cloud_latency, delivered_rate, total_latency, ArchitectureKind,
    ArchitectureProfile, ArchitectureProfiles, EndToEndResult,
};
pub use channel::{
    free_space_path_loss, link_budget, noise_power_dbm, snr_linear, two_ray_path_loss,
    LinkBudget, RadioLinkGeometry, DEFAULT_NOISE_FIGURE_DB, SPEED_OF_LIGHT_M_S,
};
pub use costrank::{cost, normalize_attributes, rank, AttributeVector, CostWeights, RankedCombo};
pub use error::{Error, Result};
pub use evaluator::{
    bh_link_rate, default_combos, evaluate_all, evaluate_run, run_statistics, sweep_users,
    ComboEvaluation, ComboId, ComboStatistics, EvalConfig, RunMetrics, RunStatistics, SweepPoint,
    SweepSeries, TechnologySet,
};
pub use linktech::{
    capacity_fso, capacity_massive_mimo, capacity_mmwave, capacity_sub6_mimo2x2,
    capacity_sub6_siso, BhTechnologySpec, FsoParams, MassiveMimoParams, TechnologyKind,
};
pub use scenario::{
    sample_scenario, slant_distance, ScenarioConfig, ScenarioInstance, UserKind, UserPlacement,
    RNG_IDENTITY,
};
