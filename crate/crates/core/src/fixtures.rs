//! Bundled datasets and published reference values.
//!
//! `expected.csv` stores every reference cell as the literal string printed
//! in the source table, together with a citation naming that table cell.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::dataset::{parse_dataset_str, DatasetFile};
use crate::error::{GreyError, Result};
use crate::grey_models::ModelVariant;

pub const OILFIELD_CSV: &str = include_str!("../fixtures/oilfield.csv");
pub const SETTLEMENT_CSV: &str = include_str!("../fixtures/settlement.csv");
pub const NUCLEAR_CSV: &str = include_str!("../fixtures/nuclear.csv");
pub const EXPECTED_CSV: &str = include_str!("../fixtures/expected.csv");

/// Model column tag for results produced by a model outside this crate.
pub const EXTERNAL_MODEL: &str = "ENGM";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    Table1,
    Oilfield,
    Settlement,
    Nuclear,
}

impl CaseId {
    pub const ALL: [CaseId; 4] = [
        CaseId::Table1,
        CaseId::Oilfield,
        CaseId::Settlement,
        CaseId::Nuclear,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::Table1 => "table1",
            CaseId::Oilfield => "oilfield",
            CaseId::Settlement => "settlement",
            CaseId::Nuclear => "nuclear",
        }
    }

    /// Raw dataset text, `None` for the parameter table.
    pub fn dataset_csv(self) -> Option<&'static str> {
        match self {
            CaseId::Table1 => None,
            CaseId::Oilfield => Some(OILFIELD_CSV),
            CaseId::Settlement => Some(SETTLEMENT_CSV),
            CaseId::Nuclear => Some(NUCLEAR_CSV),
        }
    }

    pub fn dataset(self) -> Option<DatasetFile> {
        self.dataset_csv()
            .map(|t| parse_dataset_str(t).expect("bundled dataset is valid"))
    }

    /// Training length used by the published case.
    pub fn nu(self) -> usize {
        match self {
            CaseId::Table1 => 0,
            CaseId::Oilfield => 11,
            CaseId::Settlement => 11,
            CaseId::Nuclear => 10,
        }
    }

    /// Periods forecast beyond the end of the dataset.
    pub fn horizon(self) -> usize {
        match self {
            CaseId::Nuclear => 3,
            _ => 0,
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseId {
    type Err = GreyError;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| GreyError::InvalidInput(format!("unknown case `{s}`")))
    }
}

/// What a reference cell measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// Fitted or forecast value in data units.
    Value,
    /// Per-period relative error as a fraction.
    RelErr,
    Rmspepr,
    Rmspepo,
    Rmspe,
    Ia,
    Ae,
    Mae,
    /// `ln((2+a)/(2-a)) - a`.
    Eps1,
    /// `eps1(a) / a`.
    Eps1OverA,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Value => "value",
            Quantity::RelErr => "relerr",
            Quantity::Rmspepr => "rmspepr",
            Quantity::Rmspepo => "rmspepo",
            Quantity::Rmspe => "rmspe",
            Quantity::Ia => "ia",
            Quantity::Ae => "ae",
            Quantity::Mae => "mae",
            Quantity::Eps1 => "eps1",
            Quantity::Eps1OverA => "eps1_over_a",
        }
    }
}

impl FromStr for Quantity {
    type Err = GreyError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "value" => Quantity::Value,
            "relerr" => Quantity::RelErr,
            "rmspepr" => Quantity::Rmspepr,
            "rmspepo" => Quantity::Rmspepo,
            "rmspe" => Quantity::Rmspe,
            "ia" => Quantity::Ia,
            "ae" => Quantity::Ae,
            "mae" => Quantity::Mae,
            "eps1" => Quantity::Eps1,
            "eps1_over_a" => Quantity::Eps1OverA,
            other => {
                return Err(GreyError::InvalidInput(format!(
                    "unknown quantity `{other}`"
                )))
            }
        })
    }
}

/// One published table cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedCell {
    pub case: CaseId,
    /// Model column tag, e.g. `FAGMO11K` or `ENGM`.
    pub model: String,
    /// Order as printed in the column header; empty when not applicable.
    pub order: String,
    /// Row label: a period, a metric name or an `|a|` value.
    pub row: String,
    pub quantity: Quantity,
    /// The cell exactly as printed.
    pub expected: String,
    pub citation: String,
}

impl ExpectedCell {
    pub fn expected_value(&self) -> f64 {
        self.expected.parse().expect("fixture cell is numeric")
    }

    /// `None` for columns produced by an external model.
    pub fn variant(&self) -> Option<ModelVariant> {
        if self.model == EXTERNAL_MODEL {
            None
        } else {
            Some(self.model.parse().expect("fixture model tag is known"))
        }
    }

    pub fn order_value(&self) -> Option<f64> {
        (!self.order.is_empty()).then(|| self.order.parse().expect("fixture order is numeric"))
    }
}

fn parse_expected(text: &str) -> Result<Vec<ExpectedCell>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut cells = Vec::new();
    for record in reader.records() {
        let rec = record.map_err(|e| GreyError::InvalidInput(e.to_string()))?;
        cells.push(ExpectedCell {
            case: rec[0].parse()?,
            model: rec[1].to_string(),
            order: rec[2].to_string(),
            row: rec[3].to_string(),
            quantity: rec[4].parse()?,
            expected: rec[5].to_string(),
            citation: rec[6].to_string(),
        });
    }
    Ok(cells)
}

/// All bundled reference cells in file order.
pub fn expected_cells() -> &'static [ExpectedCell] {
    static CELLS: OnceLock<Vec<ExpectedCell>> = OnceLock::new();
    CELLS.get_or_init(|| parse_expected(EXPECTED_CSV).expect("bundled expected.csv is valid"))
}

pub fn cells_for(case: CaseId) -> Vec<&'static ExpectedCell> {
    expected_cells().iter().filter(|c| c.case == case).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn datasets_parse() {
        let nuclear = CaseId::Nuclear.dataset().unwrap();
        assert_eq!(nuclear.len(), 12);
        assert_eq!(nuclear.rows[0], (2006, 12.4));
        assert_eq!(nuclear.rows[11], (2017, 56.2));
        assert_eq!(CaseId::Oilfield.dataset().unwrap().len(), 14);
        let settlement = CaseId::Settlement.dataset().unwrap();
        assert_eq!(
            settlement.labels(),
            (1..=11).map(|d| d * 10).collect::<Vec<_>>()
        );
        assert!(CaseId::Table1.dataset().is_none());
    }

    #[test]
    fn expected_cells_are_complete() {
        assert_eq!(cells_for(CaseId::Table1).len(), 18);
        let values = |case, model: &str| {
            cells_for(case)
                .into_iter()
                .filter(|c| c.model == model && c.quantity == Quantity::Value)
                .count()
        };
        assert_eq!(values(CaseId::Oilfield, "FAGMO11K"), 14);
        assert_eq!(values(CaseId::Settlement, "ONGM11K"), 11);
        assert_eq!(values(CaseId::Nuclear, "FAGMO11K"), 15);
        for cell in expected_cells() {
            cell.expected_value();
            assert!(!cell.citation.is_empty());
            if cell.case != CaseId::Table1 {
                assert!(cell.order_value().is_some() || cell.quantity != Quantity::Value);
            }
        }
    }

    #[test]
    fn cells_keep_printed_text() {
        let cell = cells_for(CaseId::Nuclear)
            .into_iter()
            .find(|c| c.model == "FAGMO11K" && c.row == "2020" && c.quantity == Quantity::Value)
            .unwrap();
        assert_eq!(cell.expected, "123.3723");
        assert_eq!(cell.order, "1.1595");
        let cell = cells_for(CaseId::Nuclear)
            .into_iter()
            .find(|c| c.model == "FAGM11" && c.quantity == Quantity::Ae)
            .unwrap();
        assert_eq!(cell.expected, "-1.1818");
        assert_eq!(cell.variant(), Some(ModelVariant::Fagm11));
    }
}
