use serde::Serialize;

use super::{ObservableSeries, Quantity};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extremum {
    pub index: usize,
    pub t: f64,
    pub value: f64,
    pub kind: ExtremumKind,
}

/// Local extrema of one quantity by discrete neighbour comparison.
///
/// A run of equal values counts once, at its first (earliest) point, and
/// only if both neighbours of the run lie on the same side. Runs touching
/// either endpoint are skipped.
pub fn extrema_locator(series: &ObservableSeries, quantity: Quantity) -> Result<Vec<Extremum>> {
    let values = series.values(quantity);
    let times = series.times();
    Ok(locate(&values)?
        .into_iter()
        .map(|(index, kind)| Extremum {
            index,
            t: times[index],
            value: values[index],
            kind,
        })
        .collect())
}

pub(crate) fn locate(values: &[f64]) -> Result<Vec<(usize, ExtremumKind)>> {
    if values.len() < 3 {
        return Err(Error::GridTooCoarse {
            points: values.len(),
            required: 3,
        });
    }
    let mut out = Vec::new();
    let mut i = 1;
    while i < values.len() - 1 {
        let v = values[i];
        let mut end = i;
        while end + 1 < values.len() && values[end + 1] == v {
            end += 1;
        }
        if end + 1 == values.len() {
            break;
        }
        let (before, after) = (values[i - 1], values[end + 1]);
        if v > before && v > after {
            out.push((i, ExtremumKind::Max));
        } else if v < before && v < after {
            out.push((i, ExtremumKind::Min));
        }
        i = end + 1;
    }
    Ok(out)
}
