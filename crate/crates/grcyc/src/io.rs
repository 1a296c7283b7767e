//! JSON interchange: complex numbers are [re, im] pairs, subsets are
//! comma-joined 1-based strings, Plucker maps are emitted in lex subset
//! order and in canonical projective form.

use crate::cmatrix::{C64, CMat};
use crate::error::{Error, Result};
use crate::plucker::{MatrixKxN, PluckerVector};
use crate::rowmotion::PosetLabeling;
use crate::subset::{Subset, SubsetTable};
use crate::tableau::Tableau;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

pub fn complex_to_value(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn complex_from_value(v: &Value) -> Result<C64> {
    let arr = v.as_array().ok_or_else(|| Error::InvalidConfig {
        reason: format!("expected [re, im], got {}", v),
    })?;
    if arr.len() != 2 {
        return Err(Error::InvalidConfig {
            reason: format!("expected [re, im], got {}", v),
        });
    }
    let re = arr[0].as_f64().ok_or_else(|| Error::InvalidConfig {
        reason: "re is not a number".into(),
    })?;
    let im = arr[1].as_f64().ok_or_else(|| Error::InvalidConfig {
        reason: "im is not a number".into(),
    })?;
    Ok(C64::new(re, im))
}

/// Parses "RE" or "RE,IM".
pub fn parse_complex_arg(s: &str) -> Result<C64> {
    let parts: Vec<&str> = s.split(',').collect();
    let bad = |_| Error::InvalidConfig {
        reason: format!("cannot parse complex value {:?}", s),
    };
    match parts.as_slice() {
        [re] => Ok(C64::new(re.trim().parse::<f64>().map_err(bad)?, 0.0)),
        [re, im] => Ok(C64::new(
            re.trim().parse::<f64>().map_err(bad)?,
            im.trim().parse::<f64>().map_err(bad)?,
        )),
        _ => Err(Error::InvalidConfig {
            reason: format!("cannot parse complex value {:?}", s),
        }),
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub k: usize,
    pub n: usize,
    pub rows: Vec<Vec<[f64; 2]>>,
}

pub fn matrix_to_json(a: &MatrixKxN) -> Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..a.k())
        .map(|i| a.mat().row(i).iter().map(|z| [z.re, z.im]).collect())
        .collect();
    json!({"k": a.k(), "n": a.n(), "rows": rows})
}

pub fn matrix_from_json(v: &Value) -> Result<MatrixKxN> {
    let f: MatrixFile = serde_json::from_value(v.clone())?;
    let rows: Vec<Vec<C64>> = f
        .rows
        .iter()
        .map(|row| row.iter().map(|&[re, im]| C64::new(re, im)).collect())
        .collect();
    if rows.len() != f.k || rows.iter().any(|r| r.len() != f.n) {
        return Err(Error::InvalidConfig {
            reason: "matrix rows do not match declared k, n".into(),
        });
    }
    MatrixKxN::from_rows(rows)
}

/// Point file: {"k":., "n":., "coords": {"1,2": [re,im], ...}} in lex order.
pub fn point_to_json(p: &PluckerVector) -> Value {
    let table = SubsetTable::new(p.k(), p.n());
    let mut coords = Map::new();
    for (s, z) in table.iter().zip(p.coords()) {
        coords.insert(s.to_string(), complex_to_value(*z));
    }
    json!({"k": p.k(), "n": p.n(), "coords": Value::Object(coords)})
}

pub fn point_from_json(v: &Value) -> Result<PluckerVector> {
    let k = v["k"].as_u64().ok_or_else(|| Error::InvalidConfig {
        reason: "point file missing k".into(),
    })? as usize;
    let n = v["n"].as_u64().ok_or_else(|| Error::InvalidConfig {
        reason: "point file missing n".into(),
    })? as usize;
    let obj = v["coords"].as_object().ok_or_else(|| Error::InvalidConfig {
        reason: "point file missing coords map".into(),
    })?;
    let table = SubsetTable::new(k, n);
    let mut coords = vec![C64::new(0.0, 0.0); table.len()];
    for (key, val) in obj {
        let s = Subset::parse(n, key)?;
        if s.k() != k {
            return Err(Error::InvalidConfig {
                reason: format!("subset {} is not a {}-subset", key, k),
            });
        }
        coords[table.position(&s)] = complex_from_value(val)?;
    }
    PluckerVector::from_raw(k, n, coords)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TableauFile {
    pub rows: Vec<Vec<u32>>,
    pub n: u32,
}

pub fn tableau_to_json(t: &Tableau, n: u32) -> Value {
    json!({"rows": t.rows(), "n": n})
}

pub fn tableau_from_json(v: &Value) -> Result<(Tableau, u32)> {
    let f: TableauFile = serde_json::from_value(v.clone())?;
    Ok((Tableau::new(f.rows, f.n)?, f.n))
}

/// Labels file: {"values": [[ [re,im], ... n-k entries ], ... k rows ]}.
pub fn labels_to_json(x: &PosetLabeling) -> Value {
    let rows: Vec<Vec<[f64; 2]>> = (1..=x.k())
        .map(|r| {
            (1..=x.width())
                .map(|s| {
                    let z = x.get(r, s);
                    [z.re, z.im]
                })
                .collect()
        })
        .collect();
    json!({"values": rows})
}

pub fn labels_from_json(v: &Value, k: usize, n: usize, q: C64) -> Result<PosetLabeling> {
    let rows = v["values"].as_array().ok_or_else(|| Error::InvalidConfig {
        reason: "labels file missing values grid".into(),
    })?;
    let mut values = Vec::new();
    for row in rows {
        let row = row.as_array().ok_or_else(|| Error::InvalidConfig {
            reason: "labels rows must be arrays".into(),
        })?;
        for cell in row {
            values.push(complex_from_value(cell)?);
        }
    }
    PosetLabeling::new(k, n, q, values)
}

pub fn square_matrix_from_json(v: &Value) -> Result<CMat> {
    let rows = v["rows"].as_array().ok_or_else(|| Error::InvalidConfig {
        reason: "missing rows".into(),
    })?;
    let n = rows.len();
    let mut out = CMat::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| Error::InvalidConfig {
            reason: "rows must be arrays".into(),
        })?;
        if row.len() != n {
            return Err(Error::InvalidConfig {
                reason: "matrix is not square".into(),
            });
        }
        for (j, cell) in row.iter().enumerate() {
            out[(i, j)] = complex_from_value(cell)?;
        }
    }
    Ok(out)
}
