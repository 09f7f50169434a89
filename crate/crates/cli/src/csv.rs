//! Long-format CSV: `quantity,line,index,value`.
//!
//! `quantity` is the dotted path of object keys. The first array index goes to
//! `line`, the second to `index`; deeper indices are appended to `quantity`.
//! Missing indices are left empty and nulls are dropped. Floats use 17
//! significant digits.

use serde_json::Value;

pub const HEADER: &str = "quantity,line,index,value";

pub fn long_format(v: &Value) -> String {
    let mut rows = vec![HEADER.to_string()];
    walk(v, &mut Vec::new(), &mut Vec::new(), &mut rows);
    rows.join("\n")
}

fn walk(v: &Value, path: &mut Vec<String>, idx: &mut Vec<usize>, rows: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                path.push(k.clone());
                walk(child, path, idx, rows);
                path.pop();
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                idx.push(i);
                walk(child, path, idx, rows);
                idx.pop();
            }
        }
        Value::Null => {}
        scalar => rows.push(row(path, idx, scalar)),
    }
}

fn row(path: &[String], idx: &[usize], v: &Value) -> String {
    let mut quantity = path.join(".");
    for extra in idx.iter().skip(2) {
        quantity.push_str(&format!(".{extra}"));
    }
    let cell = |i: usize| idx.get(i).map(|x| x.to_string()).unwrap_or_default();
    let value = match v {
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.to_string(),
            (_, Some(u)) => u.to_string(),
            _ => format!("{:.16e}", n.as_f64().unwrap_or(f64::NAN)),
        },
        Value::Bool(b) => b.to_string(),
        Value::String(s) => quote(s),
        _ => String::new(),
    };
    format!("{},{},{},{}", quote(&quantity), cell(0), cell(1), value)
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
