//! Line-oriented algebra definition files.
//!
//! ```text
//! # comments run to end of line
//! algebra <name>
//! dim <n>
//! field Q | GF(<p>)
//! p <i> <j> <k> <c>      # coefficient of e_k in e_i e_j
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use octder::{FieldSpec, Scalar, StructureConstants};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: index {index} out of range for dim {dim}")]
    IndexOutOfRange {
        line: usize,
        index: usize,
        dim: usize,
    },
    #[error(
        "line {line}: duplicate product line for ({i}, {j}, {k}), first given on line {first}"
    )]
    Duplicate {
        line: usize,
        first: usize,
        i: usize,
        j: usize,
        k: usize,
    },
    #[error("line {line}: {source}")]
    Field { line: usize, source: octder::Error },
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub field: FieldSpec,
    /// `(i, j, k) -> c`, in index order.
    pub products: BTreeMap<(usize, usize, usize), Scalar>,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut name: Option<String> = None;
        let mut dim: Option<usize> = None;
        let mut field: Option<FieldSpec> = None;
        let mut products = BTreeMap::new();
        let mut first_seen: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |message: String| ParseError::Syntax { line, message };
            let mut words = content.split_whitespace();
            let keyword = words.next().expect("non-empty line");
            let args: Vec<&str> = words.collect();
            let headers_done = !first_seen.is_empty();

            match keyword {
                "algebra" | "dim" | "field" if headers_done => {
                    return Err(syntax(format!(
                        "`{keyword}` must come before product lines"
                    )));
                }
                "algebra" => {
                    if name.is_some() {
                        return Err(syntax("repeated `algebra` header".into()));
                    }
                    match args.as_slice() {
                        [n] => name = Some((*n).to_string()),
                        _ => return Err(syntax("expected `algebra <name>`".into())),
                    }
                }
                "dim" => {
                    if dim.is_some() {
                        return Err(syntax("repeated `dim` header".into()));
                    }
                    let n = match args.as_slice() {
                        [n] => n
                            .parse::<usize>()
                            .map_err(|_| syntax(format!("invalid dimension `{n}`")))?,
                        _ => return Err(syntax("expected `dim <n>`".into())),
                    };
                    if n == 0 {
                        return Err(syntax("dimension must be positive".into()));
                    }
                    dim = Some(n);
                }
                "field" => {
                    if field.is_some() {
                        return Err(syntax("repeated `field` header".into()));
                    }
                    let spec = match args.as_slice() {
                        [f] => f,
                        _ => return Err(syntax("expected `field Q` or `field GF(<p>)`".into())),
                    };
                    field = Some(
                        spec.parse()
                            .map_err(|source| ParseError::Field { line, source })?,
                    );
                }
                "p" => {
                    let n = dim.ok_or_else(|| syntax("`dim` must precede product lines".into()))?;
                    let f =
                        field.ok_or_else(|| syntax("`field` must precede product lines".into()))?;
                    let [i, j, k, c] = args.as_slice() else {
                        return Err(syntax("expected `p <i> <j> <k> <c>`".into()));
                    };
                    let index = |s: &str| -> Result<usize, ParseError> {
                        let v = s
                            .parse::<usize>()
                            .map_err(|_| syntax(format!("invalid index `{s}`")))?;
                        if v >= n {
                            return Err(ParseError::IndexOutOfRange {
                                line,
                                index: v,
                                dim: n,
                            });
                        }
                        Ok(v)
                    };
                    let key = (index(i)?, index(j)?, index(k)?);
                    let value =
                        Scalar::parse(f, c).map_err(|source| ParseError::Field { line, source })?;
                    if let Some(&first) = first_seen.get(&key) {
                        return Err(ParseError::Duplicate {
                            line,
                            first,
                            i: key.0,
                            j: key.1,
                            k: key.2,
                        });
                    }
                    first_seen.insert(key, line);
                    products.insert(key, value);
                }
                other => return Err(syntax(format!("unknown keyword `{other}`"))),
            }
        }

        Ok(AlgebraFile {
            name: name.ok_or(ParseError::MissingHeader("algebra"))?,
            dim: dim.ok_or(ParseError::MissingHeader("dim"))?,
            field: field.ok_or(ParseError::MissingHeader("field"))?,
            products,
        })
    }

    pub fn from_structure_constants(sc: &StructureConstants) -> Self {
        let n = sc.dim();
        let mut products = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = sc.get(i, j, k);
                    if !c.is_zero() {
                        products.insert((i, j, k), c.clone());
                    }
                }
            }
        }
        AlgebraFile {
            name: sc.name().to_string(),
            dim: n,
            field: sc.field(),
            products,
        }
    }

    pub fn to_structure_constants(&self) -> StructureConstants {
        let mut sc = StructureConstants::zero(self.name.clone(), self.field, self.dim);
        for (&(i, j, k), c) in &self.products {
            sc.set(i, j, k, c.clone());
        }
        sc
    }

    /// Canonical text: headers, then nonzero products in index order.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algebra {}", self.name);
        let _ = writeln!(out, "dim {}", self.dim);
        let _ = writeln!(out, "field {}", self.field);
        for (&(i, j, k), c) in &self.products {
            if !c.is_zero() {
                let _ = writeln!(out, "p {i} {j} {k} {c}");
            }
        }
        out
    }
}

pub fn parse_algebra_file(text: &str) -> Result<StructureConstants, ParseError> {
    AlgebraFile::parse(text).map(|f| f.to_structure_constants())
}

pub fn emit(sc: &StructureConstants) -> String {
    AlgebraFile::from_structure_constants(sc).emit()
}
