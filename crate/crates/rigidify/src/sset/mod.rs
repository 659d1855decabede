//! Finite truncated simplicial sets and the machinery built on them:
//! nerves of finite categories, horn and sphere search, coskeletality and
//! quasi-category checks, and a JSON wire format.

mod category;
mod checks;
mod fin_sset;
pub mod io;
mod search;
mod shapes;

pub use category::{CatError, FinCategory, MorId, NerveBuildError, NerveComplex};
pub use checks::{
    coskeletal_completion, is_coskeletal, is_nerve_like, is_quasicategory, CompletionError,
    CoskViolation, NerveFailure, UnfilledHorn, SEARCH_LIMIT,
};
pub use fin_sset::{FinSSet, NondegId, SimplexRef, SsetError};
pub use search::{
    enumerate_horns, enumerate_spheres, find_fillers, sample_spheres, FaceAssignment,
    FillerIndex, SphereList,
};
pub use shapes::{solve_extension, ExtensionIndex, ShapeError, SubShape};
