//! Model-set specs and base files.
//!
//! ```text
//! spec    := unary (("union" | "minus" | "inter") unary)*
//! unary   := "complement" unary | "(" spec ")" | "{" labels "}"
//!          | "all" | "none" | "mod-of:" formula
//! ```
//! A `mod-of:` formula runs to the closing parenthesis of its group or to the
//! end of the input, so `(mod-of: p) minus {tt}` combines it.

use std::path::Path;

use bcm_core::{ModelSet, ParseError, SatSystem, SelectionPolicy};

use crate::error::{CliError, CliResult};

struct Scan<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scan<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn col(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(word) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let rest = self.rest();
        let boundary = rest[word.len().min(rest.len())..]
            .chars()
            .next()
            .is_none_or(|c| !c.is_ascii_alphanumeric() && c != '_' && c != '-');
        if rest.starts_with(word) && boundary {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(msg, self.col())
    }
}

pub fn parse_models<S: SatSystem>(sys: &S, text: &str) -> Result<ModelSet, ParseError> {
    let mut s = Scan { text, pos: 0 };
    let set = expr(sys, &mut s)?;
    s.skip_ws();
    if !s.rest().is_empty() {
        return Err(s.error(format!("unexpected `{}`", s.rest())));
    }
    Ok(set)
}

fn expr<S: SatSystem>(sys: &S, s: &mut Scan) -> Result<ModelSet, ParseError> {
    let mut acc = unary(sys, s)?;
    loop {
        if s.eat_keyword("union") {
            acc = acc.union(&unary(sys, s)?);
        } else if s.eat_keyword("minus") {
            acc = acc.difference(&unary(sys, s)?);
        } else if s.eat_keyword("inter") {
            acc = acc.intersection(&unary(sys, s)?);
        } else {
            return Ok(acc);
        }
    }
}

fn unary<S: SatSystem>(sys: &S, s: &mut Scan) -> Result<ModelSet, ParseError> {
    let n = sys.universe_size();
    if s.eat_keyword("complement") {
        return Ok(unary(sys, s)?.complement());
    }
    if s.eat_keyword("all") {
        return Ok(ModelSet::full(n));
    }
    if s.eat_keyword("none") {
        return Ok(ModelSet::empty(n));
    }
    if s.eat("(") {
        let inner = expr(sys, s)?;
        if !s.eat(")") {
            return Err(s.error("expected `)`"));
        }
        return Ok(inner);
    }
    if s.eat("{") {
        let mut set = ModelSet::empty(n);
        s.skip_ws();
        if s.eat("}") {
            return Ok(set);
        }
        loop {
            s.skip_ws();
            let col = s.col();
            let end = s.rest().find([',', '}']).ok_or_else(|| s.error("expected `}`"))?;
            let label = s.rest()[..end].trim();
            let m = sys
                .parse_model(label)
                .ok_or_else(|| ParseError::new(format!("unknown model `{label}`"), col))?;
            set.insert(m);
            s.pos += end;
            if s.eat("}") {
                return Ok(set);
            }
            s.eat(",");
        }
    }
    if s.eat("mod-of:") {
        s.skip_ws();
        let start = s.pos;
        let offset = s.col() - 1;
        let mut depth = 0i32;
        let mut end = s.text.len();
        for (i, c) in s.rest().char_indices() {
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => {
                    end = start + i;
                    break;
                }
                ')' => depth -= 1,
                _ => {}
            }
        }
        let formula = sys
            .parse_formula(&s.text[start..end])
            .map_err(|e| ParseError::new(e.message, e.column + offset))?;
        s.pos = end;
        return Ok(sys.models_of(&[formula]));
    }
    Err(s.error("expected a model set"))
}

/// Formula lines with `#` comments and blank lines dropped, numbered from 1.
pub fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Other(format!("{}: {e}", path.display())))
}

/// Parse base lines from the `--base` file, then any inline formulas.
pub fn load_base<F>(
    file: Option<&Path>,
    inline: &[String],
    parse: impl Fn(&str) -> Result<F, ParseError>,
) -> CliResult<Vec<F>> {
    let mut out = Vec::new();
    if let Some(path) = file {
        let text = read_file(path)?;
        for (ln, line) in content_lines(&text) {
            let f = parse(line).map_err(|e| CliError::parse_in(&path.display().to_string(), e.at_line(ln)))?;
            out.push(f);
        }
    }
    for (i, text) in inline.iter().enumerate() {
        let f = parse(text).map_err(|e| CliError::parse_in(&format!("formula #{}", i + 1), e))?;
        out.push(f);
    }
    Ok(out)
}

pub fn parse_policy<S: SatSystem>(sys: &S, text: &str) -> CliResult<SelectionPolicy> {
    match text {
        "lexmin" => Ok(SelectionPolicy::LexMin),
        "lexmax" => Ok(SelectionPolicy::LexMax),
        _ => {
            let Some(list) = text.strip_prefix("rank:") else {
                return Err(CliError::Usage(format!(
                    "unknown selection `{text}`; use lexmin, lexmax or rank:<set>;<set>"
                )));
            };
            let sets = list
                .split(';')
                .filter(|p| !p.trim().is_empty())
                .map(|p| parse_models(sys, p).map_err(|e| CliError::parse_in("--select", e)))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(SelectionPolicy::Ranking(sets))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bcm_core::logic::horn::HornSystem;
    use bcm_core::logic::prop::{PropSystem, Signature};

    fn prop() -> PropSystem {
        PropSystem::full(Signature::parse("p,q").unwrap())
    }

    fn show(text: &str) -> String {
        let sys = prop();
        sys.render_set(&parse_models(&sys, text).unwrap())
    }

    #[test]
    fn combinators() {
        assert_eq!(show("{tt, tf}"), "{tt,tf}");
        assert_eq!(show("{}"), "{}");
        assert_eq!(show("mod-of: p & !q"), "{tf}");
        assert_eq!(show("complement {tt}"), "{tf,ft,ff}");
        assert_eq!(show("(mod-of: p) minus {tt}"), "{tf}");
        assert_eq!(show("{tt} union {ff} inter all"), "{tt,ff}");
        assert_eq!(show("none union (mod-of: (p | q))"), "{tt,tf,ft}");
    }

    #[test]
    fn errors_carry_columns() {
        let sys = prop();
        assert_eq!(parse_models(&sys, "{tt,xx}").unwrap_err().column, 5);
        assert_eq!(parse_models(&sys, "mod-of: p & ").unwrap_err().column, 13);
        assert!(parse_models(&sys, "{tt} plus {tf}").is_err());
        assert!(parse_models(&sys, "(mod-of: p").is_err());
    }

    #[test]
    fn horn_aliases() {
        let sys = HornSystem::new(Signature::parse("p,q").unwrap());
        let set = parse_models(&sys, "{hb,hc}").unwrap();
        assert_eq!(sys.render_set(&set), "{tf,ft}");
    }

    #[test]
    fn comments_and_blanks() {
        let lines = content_lines("# head\np\n\n  q & p  # tail\n");
        assert_eq!(lines, vec![(2, "p"), (4, "q & p")]);
    }

    #[test]
    fn policies() {
        let sys = prop();
        assert_eq!(parse_policy(&sys, "lexmax").unwrap(), SelectionPolicy::LexMax);
        match parse_policy(&sys, "rank:{tf};{ft}").unwrap() {
            SelectionPolicy::Ranking(r) => assert_eq!(r.len(), 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_policy(&sys, "best").is_err());
    }
}
