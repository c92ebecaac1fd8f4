//! Rational weight-2 newforms with both an eta-product and an elliptic-curve
//! description. Tests cross-validate the two descriptions of every entry.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::series::EtaQuotient;

use super::curve::EllipticCurve;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogueEntry {
    pub level: u64,
    /// Isogeny-class label of the curve model.
    pub label: &'static str,
    pub eta: &'static [(u32, i32)],
    /// `[a1, a2, a3, a4, a6]`
    pub curve: [i64; 5],
    /// `a_p` at `p | N`, read off the eta expansion.
    pub bad_ap: &'static [(u64, i64)],
    pub cm: bool,
}

pub const CATALOGUE: &[CatalogueEntry] = &[
    CatalogueEntry {
        level: 11,
        label: "11a1",
        eta: &[(1, 2), (11, 2)],
        curve: [0, -1, 1, -10, -20],
        bad_ap: &[(11, 1)],
        cm: false,
    },
    CatalogueEntry {
        level: 14,
        label: "14a1",
        eta: &[(1, 1), (2, 1), (7, 1), (14, 1)],
        curve: [1, 0, 1, 4, -6],
        bad_ap: &[(2, -1), (7, 1)],
        cm: false,
    },
    CatalogueEntry {
        level: 15,
        label: "15a1",
        eta: &[(1, 1), (3, 1), (5, 1), (15, 1)],
        curve: [1, 1, 1, -10, -10],
        bad_ap: &[(3, -1), (5, 1)],
        cm: false,
    },
    CatalogueEntry {
        level: 20,
        label: "20a1",
        eta: &[(2, 2), (10, 2)],
        curve: [0, 1, 0, 4, 4],
        bad_ap: &[(2, 0), (5, -1)],
        cm: false,
    },
    CatalogueEntry {
        level: 24,
        label: "24a1",
        eta: &[(2, 1), (4, 1), (6, 1), (12, 1)],
        curve: [0, -1, 0, -4, 4],
        bad_ap: &[(2, 0), (3, -1)],
        cm: false,
    },
    CatalogueEntry {
        level: 27,
        label: "27a1",
        eta: &[(3, 2), (9, 2)],
        curve: [0, 0, 1, 0, -7],
        bad_ap: &[(3, 0)],
        cm: true,
    },
    CatalogueEntry {
        level: 32,
        label: "32a1",
        eta: &[(4, 2), (8, 2)],
        curve: [0, 0, 0, 4, 0],
        bad_ap: &[(2, 0)],
        cm: true,
    },
    CatalogueEntry {
        level: 36,
        label: "36a1",
        eta: &[(6, 4)],
        curve: [0, 0, 0, 0, 1],
        bad_ap: &[(2, 0), (3, 0)],
        cm: true,
    },
];

pub fn lookup(level: u64) -> Result<&'static CatalogueEntry> {
    CATALOGUE.iter().find(|e| e.level == level).ok_or_else(|| {
        let known: Vec<String> = CATALOGUE.iter().map(|e| e.level.to_string()).collect();
        Error::Catalogue(format!("no form at level {level}; known levels: {}", known.join(", ")))
    })
}

impl CatalogueEntry {
    pub fn eta_quotient(&self) -> EtaQuotient {
        EtaQuotient::new(self.eta).expect("catalogue eta factors are distinct")
    }

    pub fn elliptic_curve(&self) -> EllipticCurve {
        EllipticCurve::new(
            self.curve,
            self.level,
            self.bad_ap.iter().copied().collect::<BTreeMap<_, _>>(),
        )
        .expect("catalogue curve models are valid")
    }
}
