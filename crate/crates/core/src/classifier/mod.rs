//! Noetherian-class verdicts, geometric equivalence of hosts, quasi-identities and
//! certificates for fixtures with `k` solutions.

mod ek;
mod geom;
mod noetherian;

pub use ek::{
    fixture_family, parse_fixture, verify_ek_fixture, EkCertificate, EkFixture, PrefixEvidence,
    Template, BUILTIN_FIXTURES,
};
pub use geom::{
    check_isomorphic_constants, constant_correspondence, eval_quasi_identity, geom_equivalent,
    quasi_identity_agreement, quasi_identity_counterexample, radical_agreement, AgreementReport,
    GeomVerdict, SampleSpec, GEOM_SUBSET_CAP,
};
pub use noetherian::{
    classify, classify_consistently_noetherian, classify_noetherian, classify_weakly_noetherian,
    finite_subsystem, Class, ClassVerdict, Evidence, Verdict, CHAIN_SHOWN,
};
