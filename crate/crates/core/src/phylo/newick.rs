//! A restricted Newick dialect: leaf labels only, no branch lengths, no
//! quoting, no interior labels. Unrooted trees are written rooted at an
//! interior vertex, which may then have three or more children.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::taxa::{validate_label, Universe};

use super::tree::{Nested, RootedPhyloTree};
use super::triple::parse_triple;

#[derive(Debug, Clone)]
enum Raw {
    Leaf(String, usize, usize),
    Node(Vec<Raw>),
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.column, message)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn expect_special(&self, c: char) -> Error {
        match c {
            ':' => self.error("branch lengths are not supported"),
            '\'' | '"' => self.error("quoted labels are not supported"),
            '[' => self.error("comments are not supported"),
            _ => self.error(format!("unexpected `{c}`")),
        }
    }

    fn subtree(&mut self) -> Result<Raw> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.bump();
                let mut children = vec![self.subtree()?];
                loop {
                    self.skip_ws();
                    match self.bump() {
                        Some(',') => children.push(self.subtree()?),
                        Some(')') => break,
                        Some(c) => {
                            self.pos -= 1;
                            self.column -= 1;
                            return Err(self.expect_special(c));
                        }
                        None => return Err(self.error("unclosed `(`")),
                    }
                }
                if children.len() < 2 {
                    return Err(self.error("interior vertex with fewer than two children"));
                }
                self.skip_ws();
                if let Some(c) = self.peek() {
                    if is_label_char(c) {
                        return Err(self.error("interior labels are not supported"));
                    }
                    if c == ':' || c == '\'' || c == '"' {
                        return Err(self.expect_special(c));
                    }
                }
                Ok(Raw::Node(children))
            }
            Some(c) if is_label_char(c) => {
                let (line, column) = (self.line, self.column);
                let mut label = String::new();
                while let Some(c) = self.peek().filter(|&c| is_label_char(c)) {
                    label.push(c);
                    self.bump();
                }
                validate_label(&label).map_err(|e| Error::parse(line, column, e.to_string()))?;
                Ok(Raw::Leaf(label, line, column))
            }
            Some(c) => Err(self.expect_special(c)),
        }
    }

    fn tree(&mut self) -> Result<Raw> {
        let raw = self.subtree()?;
        self.skip_ws();
        match self.bump() {
            Some(';') => {}
            Some(c) => {
                self.pos -= 1;
                self.column -= 1;
                return Err(self.expect_special(c));
            }
            None => return Err(self.error("missing terminating `;`")),
        }
        self.skip_ws();
        if self.peek().is_some() {
            return Err(self.error("trailing input after `;`"));
        }
        Ok(raw)
    }
}

fn is_label_char(c: char) -> bool {
    !c.is_whitespace() && !"(),;:|#<\"'[]".contains(c)
}

fn collect_labels(raw: &Raw, out: &mut Vec<(String, usize, usize)>) {
    match raw {
        Raw::Leaf(l, line, col) => out.push((l.clone(), *line, *col)),
        Raw::Node(children) => children.iter().for_each(|c| collect_labels(c, out)),
    }
}

fn to_nested(raw: &Raw, universe: &Universe) -> Result<Nested> {
    match raw {
        Raw::Leaf(l, line, col) => universe
            .id(l)
            .map(Nested::Leaf)
            .ok_or_else(|| Error::parse(*line, *col, format!("unknown taxon `{l}`"))),
        Raw::Node(children) => Ok(Nested::Node(
            children.iter().map(|c| to_nested(c, universe)).collect::<Result<_>>()?,
        )),
    }
}

fn parse_raw(text: &str) -> Result<Raw> {
    let raw = Parser::new(text).tree()?;
    let mut labels = Vec::new();
    collect_labels(&raw, &mut labels);
    let mut seen = BTreeSet::new();
    for (l, line, col) in &labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::parse(*line, *col, format!("duplicate leaf label `{l}`")));
        }
    }
    Ok(raw)
}

/// Parses one tree whose labels must all belong to `universe`.
pub fn parse_newick(text: &str, universe: &Universe) -> Result<RootedPhyloTree> {
    RootedPhyloTree::from_nested(to_nested(&parse_raw(text)?, universe)?)
}

/// Parses one tree over the universe of its own leaf labels.
pub fn parse_newick_standalone(text: &str) -> Result<(Universe, RootedPhyloTree)> {
    let raw = parse_raw(text)?;
    let mut labels = Vec::new();
    collect_labels(&raw, &mut labels);
    let universe = Universe::new(labels.into_iter().map(|l| l.0))?;
    let tree = RootedPhyloTree::from_nested(to_nested(&raw, &universe)?)?;
    Ok((universe, tree))
}

/// Writes the canonical form, e.g. `((a,b),c);`.
pub fn write_newick(tree: &RootedPhyloTree, universe: &Universe) -> String {
    let mut out = String::new();
    write_nested(&tree.to_nested(), universe, &mut out);
    out.push(';');
    out
}

pub(crate) fn write_nested(n: &Nested, universe: &Universe, out: &mut String) {
    match n {
        Nested::Leaf(t) => out.push_str(universe.label(*t)),
        Nested::Node(children) => {
            out.push('(');
            for (i, c) in children.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_nested(c, universe, out);
            }
            out.push(')');
        }
    }
}

/// Parses a list of trees, one per line: `a,b|c` triples or Newick trees.
/// Blank lines and `#` comments are skipped. The universe is the union of all
/// labels.
pub fn parse_tree_list(text: &str) -> Result<(Universe, Vec<RootedPhyloTree>)> {
    enum Entry {
        Triple(String, usize),
        Tree(Raw),
    }
    let mut entries = Vec::new();
    let mut labels: BTreeSet<String> = BTreeSet::new();
    for (i, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if content.contains('|') {
            let parts = content.split(['|', ',']).map(str::trim);
            for p in parts {
                validate_label(p).map_err(|e| Error::parse(i + 1, 1, e.to_string()))?;
                labels.insert(p.to_string());
            }
            entries.push(Entry::Triple(content.to_string(), i + 1));
        } else {
            let raw = parse_raw(content).map_err(|e| match e {
                Error::Parse { column, message, .. } => Error::parse(i + 1, column, message),
                other => other,
            })?;
            let mut ls = Vec::new();
            collect_labels(&raw, &mut ls);
            labels.extend(ls.into_iter().map(|l| l.0));
            entries.push(Entry::Tree(raw));
        }
    }
    let universe = Universe::new(labels)?;
    let trees = entries
        .into_iter()
        .map(|e| match e {
            Entry::Triple(s, line) => parse_triple(&s, &universe)
                .map(|t| t.to_tree())
                .map_err(|e| Error::parse(line, 1, e.to_string())),
            Entry::Tree(raw) => RootedPhyloTree::from_nested(to_nested(&raw, &universe)?),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((universe, trees))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(text: &str) -> String {
        let (u, t) = parse_newick_standalone(text).unwrap();
        write_newick(&t, &u)
    }

    #[test]
    fn canonical_output() {
        assert_eq!(roundtrip("((a,b),c);"), "((a,b),c);");
        assert_eq!(roundtrip("(c,(b,a));"), "((a,b),c);");
        assert_eq!(roundtrip("(a,b,c);"), "(a,b,c);");
        assert_eq!(roundtrip("((a,b),(c,d));"), "((a,b),(c,d));");
        assert_eq!(roundtrip(" ( (d , c) ,\n(b,a) ) ; "), "((a,b),(c,d));");
        assert_eq!(roundtrip("a;"), "a;");
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_newick_standalone("((a:1,b),c);").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 1,
                column: 4,
                message: "branch lengths are not supported".into()
            }
        );
        for bad in ["((a,b)x,c);", "(('a',b),c);", "((a,b),c)", "((a,a),c);", "((a),c);", "((a,b),c);x", "(a,"] {
            assert!(matches!(parse_newick_standalone(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn universe_bound_parse() {
        let u = Universe::new(["a", "b", "c", "d"]).unwrap();
        let t = parse_newick("((a,b),c);", &u).unwrap();
        assert_eq!(t.leaves(), &[0, 1, 2]);
        assert!(parse_newick("((a,z),c);", &u).is_err());
    }

    #[test]
    fn tree_lists_mix_formats() {
        let (u, trees) = parse_tree_list("# triples\na,b|c\n\n((c,d),e);\n").unwrap();
        assert_eq!(u.len(), 5);
        assert_eq!(write_newick(&trees[0], &u), "((a,b),c);");
        assert_eq!(write_newick(&trees[1], &u), "((c,d),e);");
        assert!(parse_tree_list("a,b|a\n").is_err());
    }
}
