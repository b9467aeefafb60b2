//! SAGBI bases of subalgebras given by condition filtrations.

mod basis;
mod codim;
mod filtration;
mod semigroup;

pub use basis::{
    complete_generators, kernel_sagbi, kernel_sagbi_raw, minimalize, Completion, SagbiBasis, Subduction, Subductor,
};
pub use codim::{codimension, codimension_capped, CodimReport, GapScan};
pub use filtration::{
    build_from_conditions, in_span, leibniz_holds, truncated_kernel, ConditionFiltration, FiltrationBuilder,
    FiltrationLevel,
};
pub use semigroup::LeadSemigroup;
