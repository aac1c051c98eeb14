/// Renders `x` with 12 significant digits, trailing zeros trimmed.
pub fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-6..=15).contains(&mag) {
        let s = format!("{x:.11e}");
        let (mant, exp) = s.split_once('e').expect("exponent form");
        return format!("{}e{}", trim(mant), exp);
    }
    let decimals = (11 - mag).max(0) as usize;
    let s = trim(&format!("{x:.decimals$}"));
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn vector(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|&x| num(x)).collect();
    format!("({})", parts.join(", "))
}

pub fn matrix(rows: &[Vec<f64>], indent: &str) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| num(x)).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|r| {
            let line: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
            format!("{indent}[ {} ]", line.join("  "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}
