//! Construction, verification and tomography with generalized equiangular
//! measurements (GEAMs): informationally overcomplete POVMs obtained by
//! rescaling generalized symmetric measurements (GSMs).
//!
//! The heavy loops (tensor sums, Gram matrices, Monte Carlo seeds) run on
//! rayon when the `parallel` feature is enabled; [`Exec`] selects the backend
//! per call.

pub mod basis;
pub mod designs;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod geam;
pub mod gsm;
pub mod io;
pub mod operator;
mod overlaps;
pub mod tomography;

pub use basis::{gell_mann_basis, partition_basis, simplex_vectors, BasisPartition, OperatorBasis};
pub use designs::{conical_check_direct, kappas_closed_form, tensor_sum, DesignCertificate};
pub use error::{Error, Result};
pub use exec::Exec;
pub use geam::{
    completeness_rank, constant_r_family, design2_family, extract_parameters, mub_geam, random_geam,
    rescale_to_geam, uniform_conical_family, Classification, Geam, GeamParams,
};
pub use gsm::{build_gsm, gsm_dual_frame, verify_gsm, GsmFamily, GsmParams};
pub use operator::{
    flip_operator, gram_rank, hs_inner, random_density, trace_distance, DensityOperator, HermitianOperator,
    DEFAULT_TOL,
};
pub use tomography::{
    born_probabilities, geam_dual_frame, index_of_coincidence, ioc_closed_form, purity_from_probabilities,
    reconstruct_state, sample_measurements, ProbabilityTable,
};
