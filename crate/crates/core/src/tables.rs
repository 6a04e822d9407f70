//! Value tables for the chain links k₁…k₆ and the bouquet b with its
//! mirror, recomputed from the transcriptions in a data directory and
//! compared cell by cell with stored golden tables.
//!
//! Data directory layout:
//!
//! ```text
//! chain_k1.txt … chain_k6.txt    Gauss codes
//! bouquet_b.txt                  bouquet b
//! bouquet_b_mirror.txt           b with every crossing switched
//! golden/<table>.txt             expected tables
//! ```

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::bouquet::{compile_bouquet, parse_bouquet};
use crate::gauss::GaussDiagram;
use crate::invariants::{InvariantError, InvariantValue, Invariants, QIndex};
use crate::pattern::Permutation;
use crate::text::parse_gauss_code;

pub const CHAIN_MU_P: &str = "chain-mu-p";
pub const BOUQUET_P: &str = "bouquet-p";
pub const CHAIN_Q: &str = "chain-q";
pub const BOUQUET_Q: &str = "bouquet-q";

/// Table names in print order.
pub const TABLES: [&str; 4] = [CHAIN_MU_P, BOUQUET_P, CHAIN_Q, BOUQUET_Q];

#[derive(Debug, Error)]
pub enum TablesError {
    #[error("missing data file {path} ({what})")]
    Missing { path: PathBuf, what: String },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Invariant {
        path: PathBuf,
        source: InvariantError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub label: String,
    pub cells: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

impl Table {
    fn new(name: &str, columns: &[&str]) -> Table {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, label: &str, cells: Vec<String>) {
        self.rows.push(Row {
            label: label.into(),
            cells,
        });
    }

    pub fn cell(&self, row: &str, column: &str) -> Option<&str> {
        let c = self.columns.iter().position(|x| x == column)?;
        let r = self.rows.iter().find(|r| r.label == row)?;
        r.cells.get(c).map(String::as_str)
    }
}

/// Aligned text grid, the same format the golden files use.
impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label_width = self
            .rows
            .iter()
            .map(|r| r.label.chars().count())
            .max()
            .unwrap_or(0);
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|c| {
                self.rows
                    .iter()
                    .filter_map(|r| r.cells.get(c))
                    .chain(std::iter::once(&self.columns[c]))
                    .map(|s| s.chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        writeln!(f, "table {}", self.name)?;
        let header: Vec<String> = self
            .columns
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        writeln!(f, "{:label_width$} | {}", "", header.join(" | ").trim_end())?;
        for r in &self.rows {
            let cells: Vec<String> = r
                .cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            writeln!(f, "{:label_width$} | {}", r.label, cells.join(" | "))?;
        }
        Ok(())
    }
}

/// Parses one golden table: a `table <name>` line, a header row and data
/// rows, cells separated by `|`. `#` comments and blank lines are ignored.
pub fn parse_table(text: &str) -> Result<Table, String> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim_end())
        .filter(|l| !l.trim().is_empty());
    let name = lines
        .next()
        .and_then(|l| l.trim().strip_prefix("table "))
        .ok_or("expected `table <name>`")?
        .trim()
        .to_string();
    let split = |l: &str| -> Vec<String> { l.split('|').map(|c| c.trim().to_string()).collect() };
    let header = split(lines.next().ok_or("expected a header row")?);
    let columns = header[1..].to_vec();
    let mut rows = Vec::new();
    for l in lines {
        let mut cells = split(l);
        if cells.len() != header.len() {
            return Err(format!(
                "row `{}` has {} cells, expected {}",
                cells[0],
                cells.len() - 1,
                columns.len()
            ));
        }
        let label = cells.remove(0);
        rows.push(Row { label, cells });
    }
    Ok(Table {
        name,
        columns,
        rows,
    })
}

/// One disagreeing cell; `None` marks a cell present on one side only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDiff {
    pub table: String,
    pub row: String,
    pub column: String,
    pub computed: Option<String>,
    pub expected: Option<String>,
}

impl fmt::Display for CellDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Option<String>| v.clone().unwrap_or_else(|| "(absent)".into());
        write!(
            f,
            "{} [{}, {}]: computed {}, expected {}",
            self.table,
            self.row,
            self.column,
            show(&self.computed),
            show(&self.expected)
        )
    }
}

pub fn diff_tables(computed: &Table, expected: &Table) -> Vec<CellDiff> {
    let mut rows: Vec<&str> = computed.rows.iter().map(|r| r.label.as_str()).collect();
    for r in &expected.rows {
        if !rows.contains(&r.label.as_str()) {
            rows.push(&r.label);
        }
    }
    let mut columns: Vec<&str> = computed.columns.iter().map(String::as_str).collect();
    for c in &expected.columns {
        if !columns.contains(&c.as_str()) {
            columns.push(c);
        }
    }
    let mut out = Vec::new();
    for row in &rows {
        for column in &columns {
            let (a, b) = (computed.cell(row, column), expected.cell(row, column));
            if a != b {
                out.push(CellDiff {
                    table: computed.name.clone(),
                    row: row.to_string(),
                    column: column.to_string(),
                    computed: a.map(str::to_string),
                    expected: b.map(str::to_string),
                });
            }
        }
    }
    out
}

/// The files of a data directory.
#[derive(Debug, Clone)]
pub struct DataDir {
    pub root: PathBuf,
}

impl DataDir {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        DataDir { root: root.into() }
    }

    /// The data directory shipped with the sources.
    pub fn shipped() -> Self {
        DataDir::new(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
    }

    fn read(&self, name: &str, what: &str) -> Result<(PathBuf, String), TablesError> {
        let path = self.root.join(name);
        match fs::read_to_string(&path) {
            Ok(text) => Ok((path, text)),
            Err(_) => Err(TablesError::Missing {
                path,
                what: what.into(),
            }),
        }
    }

    /// Chain link k`r`, r in 1..=6.
    pub fn chain(&self, r: usize) -> Result<GaussDiagram, TablesError> {
        let (path, text) = self.read(
            &format!("chain_k{r}.txt"),
            &format!("Gauss diagram of k{r}"),
        )?;
        parse_gauss_code(&text).map_err(|e| TablesError::Parse {
            path,
            message: e.to_string(),
        })
    }

    pub fn bouquet(&self, mirror: bool) -> Result<GaussDiagram, TablesError> {
        let (name, what) = if mirror {
            ("bouquet_b_mirror.txt", "mirror image of bouquet b")
        } else {
            ("bouquet_b.txt", "bouquet b")
        };
        let (path, text) = self.read(name, what)?;
        parse_bouquet(&text)
            .and_then(|b| compile_bouquet(&b))
            .map_err(|e| TablesError::Parse {
                path,
                message: e.to_string(),
            })
    }

    pub fn golden(&self, table: &str) -> Result<Table, TablesError> {
        let (path, text) = self.read(
            &format!("golden/{table}.txt"),
            &format!("golden table {table}"),
        )?;
        parse_table(&text).map_err(|message| TablesError::Parse { path, message })
    }
}

fn residue_or_raw(v: &InvariantValue) -> String {
    match v.residue {
        Some(r) => r.to_string(),
        None => v.raw.to_string(),
    }
}

/// Q¹, Q², Q³ for one σ; a single number when all three agree.
fn q_cell(
    invariants: &Invariants,
    sigma: Permutation,
    d: &GaussDiagram,
) -> Result<String, InvariantError> {
    let q: Vec<i64> = (1..=3u8)
        .map(|n| invariants.q(QIndex { sigma, n }, d))
        .collect::<Result<_, _>>()?;
    Ok(if q.iter().all(|&v| v == q[0]) {
        q[0].to_string()
    } else {
        format!("({}, {}, {})", q[0], q[1], q[2])
    })
}

/// Recomputes the named table from the data directory.
pub fn compute_table(
    invariants: &Invariants,
    data: &DataDir,
    name: &str,
) -> Result<Table, TablesError> {
    let wrap = |path: &str| {
        let path = data.root.join(path);
        move |source| TablesError::Invariant {
            path: path.clone(),
            source,
        }
    };
    match name {
        CHAIN_MU_P => {
            let k1 = data.chain(1)?;
            let e = wrap("chain_k1.txt");
            let mu = invariants.milnor_mu123(&k1).map_err(&e)?;
            let (p1, p2) = invariants.p_reduced(&k1).map_err(&e)?;
            let mut t = Table::new(name, &["k1"]);
            t.push("mu123 mod lk", vec![residue_or_raw(&mu)]);
            t.push(
                "(P1, P2) mod 2lk",
                vec![format!(
                    "({}, {})",
                    residue_or_raw(&p1),
                    residue_or_raw(&p2)
                )],
            );
            Ok(t)
        }
        BOUQUET_P => {
            let mut t = Table::new(name, &["b", "b_mir"]);
            let mut cols = Vec::new();
            for (mirror, file) in [(false, "bouquet_b.txt"), (true, "bouquet_b_mirror.txt")] {
                let d = data.bouquet(mirror)?;
                let e = wrap(file);
                cols.push([
                    invariants.milnor_mu123(&d).map_err(&e)?.raw.to_string(),
                    invariants.p_hat(&d).map_err(&e)?.to_string(),
                    invariants.p1(&d).map_err(&e)?.to_string(),
                    invariants.p2(&d).map_err(&e)?.to_string(),
                ]);
            }
            for (i, label) in ["mu123 = P_even - P_odd", "P_even + P_odd", "P1", "P2"]
                .iter()
                .enumerate()
            {
                t.push(label, cols.iter().map(|c| c[i].clone()).collect());
            }
            Ok(t)
        }
        CHAIN_Q => {
            let columns = ["k1", "k2", "k3", "k4", "k5", "k6"];
            let mut t = Table::new(name, &columns);
            let links: Vec<GaussDiagram> =
                (1..=6).map(|r| data.chain(r)).collect::<Result<_, _>>()?;
            let mut mu = Vec::new();
            for (r, d) in links.iter().enumerate() {
                mu.push(residue_or_raw(
                    &invariants
                        .milnor_mu123(d)
                        .map_err(wrap(&format!("chain_k{}.txt", r + 1)))?,
                ));
            }
            t.push("mu123 mod lk", mu);
            for sigma in Permutation::ALL {
                let mut cells = Vec::new();
                for (r, d) in links.iter().enumerate() {
                    cells.push(
                        q_cell(invariants, sigma, d)
                            .map_err(wrap(&format!("chain_k{}.txt", r + 1)))?,
                    );
                }
                t.push(&format!("Q^{sigma}"), cells);
            }
            Ok(t)
        }
        BOUQUET_Q => {
            let mut t = Table::new(name, &["b", "b_mir"]);
            let mut cols = Vec::new();
            for (mirror, file) in [(false, "bouquet_b.txt"), (true, "bouquet_b_mirror.txt")] {
                let d = data.bouquet(mirror)?;
                let q: Vec<i64> = (1..=3u8)
                    .map(|n| {
                        invariants.q(
                            QIndex {
                                sigma: Permutation::IDENTITY,
                                n,
                            },
                            &d,
                        )
                    })
                    .collect::<Result<_, _>>()
                    .map_err(wrap(file))?;
                cols.push(q);
            }
            for n in 0..3 {
                t.push(
                    &format!("Q{}^id", n + 1),
                    cols.iter().map(|c| c[n].to_string()).collect(),
                );
            }
            Ok(t)
        }
        other => Err(TablesError::Missing {
            path: data.root.join(format!("golden/{other}.txt")),
            what: "unknown table".into(),
        }),
    }
}

/// Every table recomputed and diffed against its golden file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TablesReport {
    pub tables: Vec<Table>,
    pub diffs: Vec<CellDiff>,
}

impl TablesReport {
    pub fn matches(&self) -> bool {
        self.diffs.is_empty()
    }
}

impl fmt::Display for TablesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{t}")?;
        }
        if self.diffs.is_empty() {
            writeln!(f, "\nall cells match the golden tables")
        } else {
            writeln!(
                f,
                "\n{} cells differ from the golden tables:",
                self.diffs.len()
            )?;
            for d in &self.diffs {
                writeln!(f, "  {d}")?;
            }
            Ok(())
        }
    }
}

pub fn regenerate(invariants: &Invariants, data: &DataDir) -> Result<TablesReport, TablesError> {
    let mut tables = Vec::new();
    let mut diffs = Vec::new();
    for name in TABLES {
        let computed = compute_table(invariants, data, name)?;
        let golden = data.golden(name)?;
        diffs.extend(diff_tables(&computed, &golden));
        tables.push(computed);
    }
    Ok(TablesReport { tables, diffs })
}
