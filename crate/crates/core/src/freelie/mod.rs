//! Free nilpotent Lie algebra on {x, y}: Lyndon basis, BCH series, and the
//! inverse words P, Q recovering addition and bracket from a group law.

mod bch;
mod lyndon;
mod table;
mod tensor;
mod words;

pub use bch::bch_series;
pub use lyndon::{lyndon_words, FreeLieElem, LyndonBasis, MAX_CLASS};
pub use table::{parse_bracket, tables, WordTables, FORMAT_VERSION};
pub use tensor::{TruncTensor, Word};
pub use words::{
    bch_table, commutator_word, derive_inverse_words, self_inverts, FreeBchGroup, GroupWord,
    LieSeries, Node, Program, MAX_WORD_CLASS,
};
