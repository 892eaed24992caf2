//! Exact integer calculus of Lusztig cones.
//!
//! Given a Cartan matrix and a reduced word for the longest Weyl-group
//! element, this crate builds the word's cone matrices (V, W, S, T, C, P, X,
//! L-tilde, L) in exact integer arithmetic, computes string data of
//! lowest-weight vectors, decides Lusztig-cone membership two independent
//! ways (the occurrence inequalities and the row system `Lc >= 0`), and
//! tropicalizes subtraction-free rational expressions, including the
//! monomial lifts whose tropicalizations are the matrices S and T.
//!
//! Everything is integer-exact; no floating point is used anywhere.

pub mod cartan;
pub mod conemat;
pub mod tropical;
pub mod verify;
pub mod weyl;

pub(crate) mod rng;

pub use cartan::{pairing, CartanError, CartanMatrix, CorootVec, ReflectionOrder, RootVec, WeightVec};
pub use conemat::{ConematError, IntMatrix, WordMatrices};
pub use verify::{verify_word, ConeReport, StConvention};
pub use weyl::{enumerate_reduced_words, is_reduced_w0, weight_star, ReducedWord, WordError};

#[cfg(test)]
mod send_sync_contract {
    //! Every value is immutable after construction; nothing blocks sharing
    //! across threads.
    use super::*;

    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_send_and_sync() {
        assert_send_sync::<CartanMatrix>();
        assert_send_sync::<WeightVec>();
        assert_send_sync::<RootVec>();
        assert_send_sync::<CorootVec>();
        assert_send_sync::<ReducedWord>();
        assert_send_sync::<IntMatrix>();
        assert_send_sync::<WordMatrices>();
        assert_send_sync::<ConeReport>();
        assert_send_sync::<tropical::SubtractionFreeExpr>();
        assert_send_sync::<tropical::TropicalForm>();
        assert_send_sync::<weyl::ReducedWordIter>();
    }
}
