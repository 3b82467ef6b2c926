//! Deterministic text output: every number is printed with 12 significant
//! digits, JSON keys keep their written order, so identical flags always
//! produce byte-identical bytes.

/// 12 significant digits in plain decimal notation.
pub fn fmt12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).clamp(0, 24) as usize;
    format!("{:.*}", decimals, x)
}

pub fn fmt12_opt(x: Option<f64>) -> String {
    match x {
        Some(v) => fmt12(v),
        None => String::new(),
    }
}

/// Tiny ordered JSON object builder.
pub struct Json {
    buf: String,
    first: bool,
}

impl Json {
    pub fn new() -> Self {
        Json {
            buf: String::from("{"),
            first: true,
        }
    }

    fn key(&mut self, key: &str) {
        if !self.first {
            self.buf.push(',');
        }
        self.first = false;
        self.buf.push('"');
        self.buf.push_str(key);
        self.buf.push_str("\":");
    }

    pub fn num(mut self, key: &str, v: f64) -> Self {
        self.key(key);
        self.buf.push_str(&fmt12(v));
        self
    }

    pub fn num_opt(mut self, key: &str, v: Option<f64>) -> Self {
        self.key(key);
        match v {
            Some(v) => self.buf.push_str(&fmt12(v)),
            None => self.buf.push_str("null"),
        }
        self
    }

    pub fn int(mut self, key: &str, v: i64) -> Self {
        self.key(key);
        self.buf.push_str(&v.to_string());
        self
    }

    pub fn str(mut self, key: &str, v: &str) -> Self {
        self.key(key);
        self.buf.push('"');
        // keys and values here are plain identifiers; escape the basics anyway
        for ch in v.chars() {
            match ch {
                '"' => self.buf.push_str("\\\""),
                '\\' => self.buf.push_str("\\\\"),
                _ => self.buf.push(ch),
            }
        }
        self.buf.push('"');
        self
    }

    pub fn raw(mut self, key: &str, v: &str) -> Self {
        self.key(key);
        self.buf.push_str(v);
        self
    }

    pub fn finish(mut self) -> String {
        self.buf.push('}');
        self.buf
    }
}

/// JSON array from already-rendered elements.
pub fn json_array(items: &[String]) -> String {
    let mut buf = String::from("[");
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            buf.push(',');
        }
        buf.push_str(item);
    }
    buf.push(']');
    buf
}
