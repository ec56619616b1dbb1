use thiserror::Error;

/// Errors raised while constructing or checking algebraic objects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor must be a positive integer")]
    InvalidConductor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {from} does not divide {to}")]
    NotAMultiple { from: u32, to: u32 },
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("operands live over different groups")]
    GroupMismatch,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("group of order {0} is even; square roots are not unique")]
    EvenOrder(usize),
    #[error("element is not invertible")]
    Singular,
    #[error("generic inversion limited to |G|^2 <= 4096, got |G| = {0}")]
    InversionLimit(usize),
    #[error("invalid symplectic structure: {0}")]
    InvalidSymplectic(String),
    #[error("cocycle equation fails at (g, g') = ({0}, {1})")]
    CocycleEquation(usize, usize),
    #[error("cocycle map is not a bijection")]
    NotBijective,
    #[error("tensor is not invariant under the action of element {0}")]
    NotInvariant(usize),
    #[error("coefficient group must be abelian")]
    NonAbelian,
    #[error("cocycle search limited to |G| <= 36, got {0}")]
    SearchLimit(usize),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
