//! Cleanup of lightly formatted FOL lines before tokenization.

const BULLETS: &[char] = &['-', '*', '•'];
const QUOTES: &[char] = &['"', '\'', '\u{201C}', '\u{201D}', '\u{2018}', '\u{2019}'];
const TRAILING_PUNCT: &[char] = &['.', ';', ','];

/// Strips a leading statement label (`fact7:`, `rule5:`, `premise:`),
/// bullet glyphs, surrounding quotation marks, trailing sentence
/// punctuation and whitespace. Steps repeat until nothing changes, so the
/// result is a fixed point and `normalize(normalize(x)) == normalize(x)`.
pub fn normalize(raw: &str) -> String {
    let mut cur = raw;
    loop {
        let next = step(cur);
        if next.len() == cur.len() {
            return next.to_string();
        }
        cur = next;
    }
}

fn step(s: &str) -> &str {
    let s = s.trim();
    let s = s.trim_start_matches(BULLETS);
    let s = s.trim_start();
    let s = s.trim_matches(QUOTES);
    let s = strip_label(s);
    s.trim_end_matches(|c: char| TRAILING_PUNCT.contains(&c) || c.is_whitespace())
}

/// Removes a prefix matching `[A-Za-z]+[0-9]*\s*:`.
fn strip_label(s: &str) -> &str {
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
        i += 1;
    }
    if i == 0 {
        return s;
    }
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    let rest = &s[i..];
    let after_ws = rest.trim_start();
    match after_ws.strip_prefix(':') {
        Some(tail) => tail,
        None => s,
    }
}
