//! Identifier tokens naming model elements.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// A validated name: letters, digits and underscores, starting with a letter.
///
/// Identifiers name sensors, actuators, devices, controllers, services,
/// protocols, orders, signals and states. Uniqueness across the component
/// namespaces of a model is enforced when the model is assembled, not here.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Identifier(String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid identifier {text:?}: {reason}")]
pub struct InvalidIdentifier {
    pub text: String,
    pub reason: &'static str,
}

impl Identifier {
    pub fn new(name: impl Into<String>) -> Result<Self, InvalidIdentifier> {
        let name = name.into();
        let mut chars = name.chars();
        match chars.next() {
            None => {
                return Err(InvalidIdentifier {
                    text: name,
                    reason: "must not be empty",
                })
            }
            Some(c) if !c.is_ascii_alphabetic() => {
                return Err(InvalidIdentifier {
                    text: name,
                    reason: "must start with a letter",
                })
            }
            Some(_) => {}
        }
        if let Some(bad) = chars.find(|c| !c.is_ascii_alphanumeric() && *c != '_') {
            let _ = bad;
            return Err(InvalidIdentifier {
                text: name,
                reason: "may only contain letters, digits and underscores",
            });
        }
        Ok(Identifier(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Identifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for Identifier {
    type Err = InvalidIdentifier;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identifier::new(s)
    }
}

impl AsRef<str> for Identifier {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_regular_tokens() {
        for ok in ["ls1", "LIGHTSENSOR", "on_signal", "a"] {
            assert_eq!(Identifier::new(ok).unwrap().as_str(), ok);
        }
    }

    #[test]
    fn rejects_malformed_tokens() {
        for bad in ["", "1ls", "_x", "a-b", "a b", "ctl!"] {
            assert!(Identifier::new(bad).is_err(), "{bad:?} should be rejected");
        }
    }
}
