//! Egg-box diagrams: each D-class as a grid of H-classes with R-classes as
//! rows and L-classes as columns, group cells flagged, and the covering
//! relation of the order on D-classes. Renders to JSON, DOT and ASCII.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greens::GreenKind;
use crate::idempotents::is_idempotent;
use crate::maps::{parse_map, PartialMap, Variant};
use crate::sandwich::{ClassKey, Sandwich};

/// Which elements the diagram shows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    /// The whole sandwich semigroup.
    Full,
    /// The regular elements only.
    Regular,
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(Scope::Full),
            "regular" => Ok(Scope::Regular),
            other => Err(Error::InvalidParams(format!("unknown scope {other:?}"))),
        }
    }
}

/// Output format of [`render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Json,
    Dot,
    Ascii,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            "ascii" => Ok(Format::Ascii),
            other => Err(Error::InvalidParams(format!("unknown format {other:?}"))),
        }
    }
}

/// One D-class drawn as a grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DClassGrid {
    pub rank: usize,
    /// Least element of each R-class, in canonical order.
    pub rows: Vec<PartialMap>,
    /// Least element of each L-class, in canonical order.
    pub cols: Vec<PartialMap>,
    /// `cells[r][c]` lists the H-class in row `r` and column `c`.
    pub cells: Vec<Vec<Vec<PartialMap>>>,
    /// Whether the cell contains an idempotent.
    pub groups: Vec<Vec<bool>>,
}

impl DClassGrid {
    pub fn size(&self) -> usize {
        self.cells.iter().flatten().map(Vec::len).sum()
    }

    /// Common size of the nonempty cells.
    pub fn cell_size(&self) -> usize {
        self.cells
            .iter()
            .flatten()
            .map(Vec::len)
            .find(|&l| l > 0)
            .unwrap_or(0)
    }
}

/// An egg-box diagram of a sandwich semigroup or of its regular elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EggBox {
    pub variant: Variant,
    pub m: usize,
    pub n: usize,
    pub a: PartialMap,
    pub scope: Scope,
    /// D-classes by decreasing rank, then by least element.
    pub dclasses: Vec<DClassGrid>,
    /// Pairs `(lower, upper)` of D-class indices where `upper` covers `lower`.
    pub covers: Vec<(usize, usize)>,
}

/// Builds the egg-box diagram.
pub fn build_eggbox(s: &Sandwich, scope: Scope) -> Result<EggBox> {
    let elements = match scope {
        Scope::Full => s.elements()?,
        Scope::Regular => s.regular_elements()?,
    };
    // Elements are in canonical order, so the first member of each group is
    // its least element.
    let mut d_index: HashMap<ClassKey, usize> = HashMap::new();
    let mut d_members: Vec<Vec<PartialMap>> = Vec::new();
    for f in elements {
        let key = s.class_key(GreenKind::D, &f);
        let idx = *d_index.entry(key).or_insert_with(|| {
            d_members.push(Vec::new());
            d_members.len() - 1
        });
        d_members[idx].push(f);
    }
    d_members.sort_by(|x, y| y[0].rank().cmp(&x[0].rank()).then_with(|| x[0].cmp(&y[0])));

    let dclasses: Vec<DClassGrid> = d_members.iter().map(|members| grid(s, members)).collect();

    let k = dclasses.len();
    let reps: Vec<&PartialMap> = d_members.iter().map(|d| &d[0]).collect();
    let mut below = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            below[i][j] = i != j && s.jorder_leq(reps[i], reps[j])?;
        }
    }
    let mut covers = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if below[i][j] && !(0..k).any(|t| below[i][t] && below[t][j]) {
                covers.push((i, j));
            }
        }
    }
    Ok(EggBox {
        variant: s.variant(),
        m: s.m(),
        n: s.n(),
        a: s.a().clone(),
        scope,
        dclasses,
        covers,
    })
}

fn grid(s: &Sandwich, members: &[PartialMap]) -> DClassGrid {
    let mut row_of: HashMap<ClassKey, usize> = HashMap::new();
    let mut col_of: HashMap<ClassKey, usize> = HashMap::new();
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    let mut placed = Vec::with_capacity(members.len());
    for f in members {
        let r = *row_of
            .entry(s.class_key(GreenKind::R, f))
            .or_insert_with(|| {
                rows.push(f.clone());
                rows.len() - 1
            });
        let c = *col_of
            .entry(s.class_key(GreenKind::L, f))
            .or_insert_with(|| {
                cols.push(f.clone());
                cols.len() - 1
            });
        placed.push((r, c, f.clone()));
    }
    // Indices were assigned in order of first appearance; renumber so rows and
    // columns follow their least elements.
    let row_rank = order_of(&rows);
    let col_rank = order_of(&cols);
    rows.sort();
    cols.sort();
    let mut cells = vec![vec![Vec::new(); cols.len()]; rows.len()];
    let mut groups = vec![vec![false; cols.len()]; rows.len()];
    for (r, c, f) in placed {
        let (r, c) = (row_rank[r], col_rank[c]);
        groups[r][c] |= is_idempotent(s, &f);
        cells[r][c].push(f);
    }
    DClassGrid {
        rank: members[0].rank(),
        rows,
        cols,
        cells,
        groups,
    }
}

/// Position of each item after sorting.
fn order_of(items: &[PartialMap]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..items.len()).collect();
    idx.sort_by(|&x, &y| items[x].cmp(&items[y]));
    let mut pos = vec![0; items.len()];
    for (p, &i) in idx.iter().enumerate() {
        pos[i] = p;
    }
    pos
}

#[derive(Serialize, Deserialize)]
struct JsonGrid {
    rank: usize,
    rows: Vec<String>,
    cols: Vec<String>,
    cells: Vec<Vec<Vec<String>>>,
    groups: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct JsonBox {
    schema_version: u32,
    variant: Variant,
    m: usize,
    n: usize,
    a: String,
    scope: Scope,
    dclasses: Vec<JsonGrid>,
    covers: Vec<[usize; 2]>,
}

pub const SCHEMA_VERSION: u32 = 1;

impl EggBox {
    pub fn to_json(&self) -> String {
        let text = |f: &PartialMap| f.to_string();
        let doc = JsonBox {
            schema_version: SCHEMA_VERSION,
            variant: self.variant,
            m: self.m,
            n: self.n,
            a: text(&self.a),
            scope: self.scope,
            dclasses: self
                .dclasses
                .iter()
                .map(|d| JsonGrid {
                    rank: d.rank,
                    rows: d.rows.iter().map(text).collect(),
                    cols: d.cols.iter().map(text).collect(),
                    cells: d
                        .cells
                        .iter()
                        .map(|row| row.iter().map(|c| c.iter().map(text).collect()).collect())
                        .collect(),
                    groups: d.groups.clone(),
                })
                .collect(),
            covers: self.covers.iter().map(|&(i, j)| [i, j]).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: JsonBox =
            serde_json::from_str(text).map_err(|e| Error::InvalidParams(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidParams(format!(
                "unsupported schema version {}",
                doc.schema_version
            )));
        }
        let (m, n, variant) = (doc.m, doc.n, doc.variant);
        let map = |t: &String| parse_map(t, m, n, variant);
        let maps = |v: &[String]| v.iter().map(map).collect::<Result<Vec<_>>>();
        let dclasses = doc
            .dclasses
            .iter()
            .map(|d| {
                Ok(DClassGrid {
                    rank: d.rank,
                    rows: maps(&d.rows)?,
                    cols: maps(&d.cols)?,
                    cells: d
                        .cells
                        .iter()
                        .map(|row| row.iter().map(|c| maps(c)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?,
                    groups: d.groups.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EggBox {
            variant,
            m,
            n,
            a: parse_map(&doc.a, n, m, variant)?,
            scope: doc.scope,
            dclasses,
            covers: doc.covers.iter().map(|&[i, j]| (i, j)).collect(),
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph eggbox {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=plaintext];").unwrap();
        for (i, d) in self.dclasses.iter().enumerate() {
            writeln!(out, "  subgraph cluster_d{i} {{").unwrap();
            writeln!(out, "    label=\"rank {}\";", d.rank).unwrap();
            let mut table = String::from("<TABLE BORDER=\"0\" CELLBORDER=\"1\" CELLSPACING=\"0\">");
            for (r, row) in d.cells.iter().enumerate() {
                table.push_str("<TR>");
                for (c, cell) in row.iter().enumerate() {
                    if d.groups[r][c] {
                        table.push_str("<TD BGCOLOR=\"gray\">");
                    } else {
                        table.push_str("<TD>");
                    }
                    let body: Vec<String> = cell.iter().map(|f| f.to_string()).collect();
                    table.push_str(&body.join("<BR/>"));
                    table.push_str("</TD>");
                }
                table.push_str("</TR>");
            }
            table.push_str("</TABLE>");
            writeln!(out, "    d{i} [label=<{table}>];").unwrap();
            writeln!(out, "  }}").unwrap();
        }
        for &(lower, upper) in &self.covers {
            writeln!(out, "  d{lower} -> d{upper};").unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }

    pub fn to_ascii(&self) -> String {
        let mut out = String::new();
        for (i, d) in self.dclasses.iter().enumerate() {
            writeln!(
                out,
                "D{i}: rank {}, {} x {}, cell size {}",
                d.rank,
                d.rows.len(),
                d.cols.len(),
                d.cell_size()
            )
            .unwrap();
            let texts: Vec<Vec<String>> = d
                .cells
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(c, cell)| {
                            let mark = if d.groups[r][c] { "*" } else { " " };
                            let body: Vec<String> = cell.iter().map(|f| format!("[{f}]")).collect();
                            format!("{mark}{}", body.join(" "))
                        })
                        .collect()
                })
                .collect();
            let width = texts
                .iter()
                .flatten()
                .map(|t| t.chars().count())
                .max()
                .unwrap_or(1);
            let rule = format!(
                "+{}",
                format!("{}+", "-".repeat(width + 2)).repeat(d.cols.len())
            );
            writeln!(out, "{rule}").unwrap();
            for row in &texts {
                let line: String = row.iter().map(|t| format!(" {t:<width$} |")).collect();
                writeln!(out, "|{line}").unwrap();
                writeln!(out, "{rule}").unwrap();
            }
        }
        if !self.covers.is_empty() {
            let edges: Vec<String> = self
                .covers
                .iter()
                .map(|(l, u)| format!("D{l} < D{u}"))
                .collect();
            writeln!(out, "covers: {}", edges.join(", ")).unwrap();
        }
        out
    }
}

/// Renders the diagram in the chosen format.
pub fn render(eggbox: &EggBox, format: Format) -> Vec<u8> {
    match format {
        Format::Json => eggbox.to_json(),
        Format::Dot => eggbox.to_dot(),
        Format::Ascii => eggbox.to_ascii(),
    }
    .into_bytes()
}
