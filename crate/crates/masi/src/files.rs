//! JSON state and observable files.
//!
//! A state file holds `{"dims": [d1, d2], "rho": [[[re, im], ...], ...],
//! "label": "..."}` with `rho` the row-major `(d1·d2) × (d1·d2)` density
//! matrix. An observable file holds `{"matrix": [[[re, im], ...], ...],
//! "label": "..."}`. Floats are written with 17 significant digits so that a
//! written file reads back bit-identically.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use masi_core::{BipartiteState, ComplexMatrix, DensityMatrix, C64};
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, Serializer};

use crate::error::{CliError, Result};

type Rows = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: [usize; 2],
    pub rho: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservableFile {
    pub matrix: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

fn to_rows(m: &ComplexMatrix) -> Rows {
    let n = m.dim();
    (0..n)
        .map(|i| (0..n).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
        .collect()
}

/// Square matrix from nested rows, reporting the first malformed row.
fn from_rows(rows: &Rows, path: &Path, field: &str) -> Result<ComplexMatrix> {
    let n = rows.len();
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(CliError::parse(
                path,
                format!("{field}: row {i} has {} entries, expected {n}", row.len()),
            ));
        }
        entries.extend(row.iter().map(|&[re, im]| C64::new(re, im)));
    }
    ComplexMatrix::from_row_slice(n, &entries).map_err(|e| CliError::parse(path, format!("{field}: {e}")))
}

impl StateFile {
    pub fn from_state(s: &BipartiteState, label: Option<String>) -> Self {
        Self {
            dims: [s.d1(), s.d2()],
            rho: to_rows(s.state().matrix()),
            label,
        }
    }

    pub fn to_state(&self, path: &Path) -> Result<BipartiteState> {
        let [d1, d2] = self.dims;
        if d1 == 0 || d2 == 0 || self.rho.len() != d1 * d2 {
            return Err(CliError::parse(
                path,
                format!("rho has {} rows, dims {d1}x{d2} need {}", self.rho.len(), d1 * d2),
            ));
        }
        let m = from_rows(&self.rho, path, "rho")?;
        let rho = DensityMatrix::new(m).map_err(|e| CliError::parse(path, format!("rho: {e}")))?;
        BipartiteState::new(rho, d1, d2).map_err(|e| CliError::parse(path, format!("rho: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self> {
        read_json(path)
    }

    pub fn write(&self, out: impl Write) -> io::Result<()> {
        write_json(self, out)
    }

    pub fn to_json(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("JSON is UTF-8")
    }
}

impl ObservableFile {
    pub fn from_matrix(m: &ComplexMatrix, label: Option<String>) -> Self {
        Self {
            matrix: to_rows(m),
            label,
        }
    }

    pub fn to_matrix(&self, path: &Path) -> Result<ComplexMatrix> {
        if self.matrix.is_empty() {
            return Err(CliError::parse(path, "matrix is empty"));
        }
        from_rows(&self.matrix, path, "matrix")
    }

    pub fn read(path: &Path) -> Result<Self> {
        read_json(path)
    }

    pub fn write(&self, out: impl Write) -> io::Result<()> {
        write_json(self, out)
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(path, e.to_string()))
}

/// Pretty JSON with every float in `{:.16e}` form.
struct Exact17(serde_json::ser::PrettyFormatter<'static>);

impl Formatter for Exact17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

fn write_json<T: Serialize>(value: &T, mut out: impl Write) -> io::Result<()> {
    let mut ser = Serializer::with_formatter(&mut out, Exact17(serde_json::ser::PrettyFormatter::new()));
    value.serialize(&mut ser).map_err(io::Error::other)?;
    out.write_all(b"\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use masi_core::states::{random_bipartite, random_pure};

    fn path() -> &'static Path {
        Path::new("test.json")
    }

    #[test]
    fn round_trip_is_bit_identical() {
        for seed in 0..20 {
            let s = random_bipartite(2, 3, 1 + seed as usize % 6, seed).unwrap();
            let file = StateFile::from_state(&s, Some(format!("s{seed}")));
            let text = file.to_json();
            let back: StateFile = serde_json::from_str(&text).unwrap();
            assert_eq!(back, file);
            let again = back.to_state(path()).unwrap();
            assert_eq!(again.state().matrix(), s.state().matrix());
            assert_eq!(StateFile::from_state(&again, back.label.clone()).to_json(), text);
        }
    }

    #[test]
    fn floats_have_17_significant_digits() {
        let s = BipartiteState::new(random_pure(4, 1).unwrap(), 2, 2).unwrap();
        let text = StateFile::from_state(&s, None).to_json();
        let number = text
            .split(['[', ']', ',', '\n', ' '])
            .find(|t| t.contains('e'))
            .unwrap();
        let mantissa = number.trim_start_matches('-').split('e').next().unwrap();
        assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17, "{number}");
        assert!(!text.contains("label"));
    }

    #[test]
    fn validation_reports_positions() {
        let mut file = StateFile::from_state(&BipartiteState::bell(), None);
        file.rho[1][2] = [0.3, 0.0];
        let err = file.to_state(path()).unwrap_err().to_string();
        assert!(
            err.contains("Hermitian") && (err.contains("(1, 2)") || err.contains("(2, 1)")),
            "{err}"
        );

        let mut short = StateFile::from_state(&BipartiteState::bell(), None);
        short.rho[3].pop();
        let err = short.to_state(path()).unwrap_err().to_string();
        assert!(err.contains("row 3"), "{err}");

        let mut dims = StateFile::from_state(&BipartiteState::bell(), None);
        dims.dims = [3, 2];
        assert!(dims.to_state(path()).is_err());

        let mut trace = StateFile::from_state(&BipartiteState::bell(), None);
        trace.rho[0][0] = [0.9, 0.0];
        assert!(trace.to_state(path()).unwrap_err().to_string().contains("trace"));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = serde_json::from_str::<StateFile>(r#"{"dims":[1,1],"rho":[[[1,0]]],"extra":1}"#);
        assert!(err.is_err());
        let ok: StateFile = serde_json::from_str(r#"{"dims":[1,1],"rho":[[[1,0]]]}"#).unwrap();
        assert!(ok.to_state(path()).is_ok());
    }

    #[test]
    fn observable_round_trip() {
        let m = ComplexMatrix::pauli_y();
        let file = ObservableFile::from_matrix(&m, Some("y".into()));
        let mut buf = Vec::new();
        file.write(&mut buf).unwrap();
        let back: ObservableFile = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back.to_matrix(path()).unwrap(), m);
    }
}
