use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Ring properties reported by a classification, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Regular,
    UnitRegular,
    StronglyRegular,
    PiRegular,
    StronglyPiRegular,
    Clean,
    StronglyClean,
    NilClean,
    StronglyNilClean,
    ExchangeGn,
    ExchangeKln,
    Utumi,
    UtumiSymmetric,
    Rnc,
    Drnc,
    Abelian,
}

impl Property {
    pub const ALL: [Property; 16] = [
        Property::Regular,
        Property::UnitRegular,
        Property::StronglyRegular,
        Property::PiRegular,
        Property::StronglyPiRegular,
        Property::Clean,
        Property::StronglyClean,
        Property::NilClean,
        Property::StronglyNilClean,
        Property::ExchangeGn,
        Property::ExchangeKln,
        Property::Utumi,
        Property::UtumiSymmetric,
        Property::Rnc,
        Property::Drnc,
        Property::Abelian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Regular => "regular",
            Property::UnitRegular => "unit_regular",
            Property::StronglyRegular => "strongly_regular",
            Property::PiRegular => "pi_regular",
            Property::StronglyPiRegular => "strongly_pi_regular",
            Property::Clean => "clean",
            Property::StronglyClean => "strongly_clean",
            Property::NilClean => "nil_clean",
            Property::StronglyNilClean => "strongly_nil_clean",
            Property::ExchangeGn => "exchange_gn",
            Property::ExchangeKln => "exchange_kln",
            Property::Utumi => "utumi",
            Property::UtumiSymmetric => "utumi_symmetric",
            Property::Rnc => "rnc",
            Property::Drnc => "drnc",
            Property::Abelian => "abelian",
        }
    }

    /// Whether witnesses are indexed by the idempotents rather than by
    /// every element.
    pub fn over_idempotents(self) -> bool {
        self == Property::Abelian
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}
