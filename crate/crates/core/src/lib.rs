pub mod calculi;
pub mod corpus;
pub mod kftruth;
pub mod manyvalued;
pub mod mixed;
pub mod suites;
pub mod syntax;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/formulas.md")]
    mod formulas {}
    #[doc = include_str!("../../../book/src/mixed.md")]
    mod mixed {}
    #[doc = include_str!("../../../book/src/calculi.md")]
    mod calculi {}
    #[doc = include_str!("../../../book/src/fixpoints.md")]
    mod fixpoints {}
    #[doc = include_str!("../../../book/src/bridge.md")]
    mod bridge {}
    #[doc = include_str!("../../../book/src/sweeps.md")]
    mod sweeps {}
}
