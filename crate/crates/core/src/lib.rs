//! N-prime graphs and Gruenberg-Kegel graphs of finite permutation groups,
//! together with the exact-arithmetic and brute-force machinery used to
//! check statements about them.
//!
//! * [`perm`]: permutation groups and their structural queries.
//! * [`construct`]: builders for the group families used throughout.
//! * [`graphs`]: the directed N-prime graph and the undirected prime graph.
//! * [`cyclo`]: exact arithmetic in cyclotomic fields.
//! * [`grpring`]: integral group ring elements and partial augmentations.
//! * [`criteria`]: the character-value criterion excluding Frobenius subgroups
//!   `C_p x| C_q` from unit groups, and the `PSL(2,q)` driver built on it.
//! * [`corpus`]: batch runs over a configurable list of groups.
//! * [`oracles`]: brute-force checks of descent, quotient and counting identities.

pub mod construct;
pub mod corpus;
pub mod criteria;
pub mod cyclo;
pub mod error;
pub mod graphs;
pub mod grpring;
pub mod modp;
pub mod numtheory;
pub mod oracles;
pub mod perm;
pub mod report;

pub use error::{Error, Result};
pub use perm::{ConjClass, PermGroup, Permutation, Subgroup};
