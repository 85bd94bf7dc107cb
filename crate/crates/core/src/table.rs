//! Finite multiplication tables over `0..n`, with elements numbered in
//! ascending order.
//!
//! CSV form: a header line `n,unit_index,falsum_index`, then `n` rows of `n`
//! product indices.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    product: Vec<Vec<usize>>,
    unit: usize,
    falsum: usize,
}

impl CayleyTable {
    pub fn new(product: Vec<Vec<usize>>, unit: usize, falsum: usize) -> Result<CayleyTable> {
        let n = product.len();
        if n == 0 {
            return Err(Error::parse_msg("a table has at least one element"));
        }
        if let Some(i) = product.iter().position(|row| row.len() != n) {
            return Err(Error::parse_msg(format!("row {i} has {} entries, expected {n}", product[i].len())));
        }
        if product.iter().flatten().any(|&p| p >= n) || unit >= n || falsum >= n {
            return Err(Error::parse_msg(format!("indices must lie in 0..{n}")));
        }
        Ok(CayleyTable { product, unit, falsum })
    }

    pub fn len(&self) -> usize {
        self.product.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn falsum(&self) -> usize {
        self.falsum
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.product[x][y]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.product
    }

    pub fn parse_csv(text: &str) -> Result<CayleyTable> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut records = Vec::new();
        for rec in reader.records() {
            let rec = rec.map_err(|e| Error::Parse {
                line: e.position().map(|p| p.line() as usize),
                field: None,
                message: e.to_string(),
            })?;
            let line = rec.position().map(|p| p.line() as usize);
            let nums = rec
                .iter()
                .enumerate()
                .map(|(col, s)| {
                    s.parse::<usize>().map_err(|_| Error::Parse {
                        line,
                        field: Some(format!("column {col}")),
                        message: format!("`{s}` is not a nonnegative integer"),
                    })
                })
                .collect::<Result<Vec<usize>>>()?;
            records.push((line, nums));
        }
        let Some(((_, header), rows)) = records.split_first() else {
            return Err(Error::parse_msg("empty table"));
        };
        let &[n, unit, falsum] = header.as_slice() else {
            return Err(Error::Parse {
                line: Some(1),
                field: None,
                message: "header is `n,unit_index,falsum_index`".into(),
            });
        };
        if rows.len() != n {
            return Err(Error::parse_msg(format!("expected {n} rows, found {}", rows.len())));
        }
        for (line, row) in rows {
            if row.len() != n || row.iter().any(|&p| p >= n) {
                return Err(Error::Parse {
                    line: *line,
                    field: None,
                    message: format!("expected {n} indices below {n}"),
                });
            }
        }
        CayleyTable::new(rows.iter().map(|(_, r)| r.clone()).collect(), unit, falsum)
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{},{},{}\n", self.len(), self.unit, self.falsum);
        for row in &self.product {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}
