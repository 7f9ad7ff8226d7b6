use super::DeclaredParity;
use crate::error::{Error, Result};

/// A round `k`-handle seen as an ordinary `k`-handle followed by a
/// `(k+1)`-handle. The attaching sphere of the second meets the belt sphere
/// of the first geometrically twice; algebraically zero times when untwisted,
/// twice when twisted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HandlePairDescriptor {
    pub index: (u8, u8),
    pub geometric: u8,
    pub algebraic: u8,
}

/// Decomposition of a round `round_index`-handle, `round_index ∈ 0..=3`.
/// Turning a round handle upside down exchanges round 1- and 2-handles and
/// keeps the linking data.
pub fn round_handle_decomposition(parity: DeclaredParity, round_index: u8) -> Result<HandlePairDescriptor> {
    if round_index > 3 {
        return Err(Error::invalid(format!("no round {round_index}-handles in dimension 4")));
    }
    let algebraic = match parity {
        DeclaredParity::Untwisted => 0,
        DeclaredParity::Twisted => 2,
        DeclaredParity::Auto => return Err(Error::invalid("classify the round handle before decomposing it")),
    };
    Ok(HandlePairDescriptor { index: (round_index, round_index + 1), geometric: 2, algebraic })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linking_data() {
        assert_eq!(
            round_handle_decomposition(DeclaredParity::Untwisted, 1).unwrap(),
            HandlePairDescriptor { index: (1, 2), geometric: 2, algebraic: 0 }
        );
        assert_eq!(
            round_handle_decomposition(DeclaredParity::Twisted, 1).unwrap(),
            HandlePairDescriptor { index: (1, 2), geometric: 2, algebraic: 2 }
        );
        let dual = round_handle_decomposition(DeclaredParity::Twisted, 2).unwrap();
        assert_eq!(dual.index, (2, 3));
        assert_eq!((dual.geometric, dual.algebraic), (2, 2));
        assert!(round_handle_decomposition(DeclaredParity::Auto, 1).is_err());
        assert!(round_handle_decomposition(DeclaredParity::Untwisted, 4).is_err());
    }
}
