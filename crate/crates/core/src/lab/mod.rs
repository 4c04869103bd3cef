//! Theorem lab: windowed test criteria, witnesses, the corpus and the explorer.

mod check;
mod corpus;
mod explorer;
mod gdim;
mod report;
mod rows;
mod witness;

pub use check::{
    check, scan_contrapositive, CheckInput, CheckOptions, Status, TheoremVerdict, WindowResult, DEFAULT_BOUND,
    DEFAULT_JMAX, DEFAULT_NMAX,
};
pub use gdim::{bounded_gdim, bounded_semidualizing, GDimDiagnosis, SemidualizingDiagnosis};
pub use rows::{row_info, Conclusion, Functor, Mode, RowInfo, Slot, WindowSpec, ROWS};
pub use witness::{witness, Witness, WitnessSummary, WITNESS_THEOREMS};
pub use corpus::{
    corpus_cases, run_corpus, run_corpus_cases, CaseKind, CaseReport, CorpusCase, CorpusReport, ModSpec, ModeTally,
    RingSpec,
};
pub use explorer::{
    examine, explore_q52, random_artinian_ring, random_module, Examination, ExplorerParams, ExplorerReport, Trial,
};
pub use report::{Record, RECORD_KEYS};
