//! Exact arithmetic in the Klein bottle group `pi = <a, b | ba = ab^-1>`, its
//! group rings, the augmentation ideal and its tensor powers.
//!
//! Elements of `pi` are kept in the normal form `a^m b^n`; every type here is
//! an immutable value with structural equality.

mod group;
mod ideal;
mod lincomb;
mod ring;
mod tensor;

pub(crate) use group::parity_sign;
pub use group::{Group, GroupElement, Pair, PairElement};
pub use ideal::{alpha_label, AlphaIndex, IdealElement};
pub use lincomb::LinComb;
pub use ring::{KleinRing, PairRing, RingElement};
pub use tensor::{
    AlphaBasis, GroupBasis, GroupTensor, IdealTensor, TensorBasis, TensorElement, TensorKey,
};

/// `act(p, x)` for the augmentation ideal; see [`IdealElement::act`].
pub fn act(p: &PairElement, x: &IdealElement) -> IdealElement {
    x.act(p)
}

/// Diagonal action on a tensor power; see [`TensorElement::act`].
pub fn act_tensor<B: TensorBasis>(p: &PairElement, t: &TensorElement<B>) -> TensorElement<B> {
    t.act(p)
}
