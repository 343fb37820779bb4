//! Line-oriented `section.key = value` reports.

use std::fmt::{self, Display};

use sortable_core::{Face, LatticePoint, SheddingTree, SupportForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub entries: Vec<(String, String)>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Section { name: name.into(), entries: Vec::new() }
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub id: String,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(id: impl Into<String>) -> Self {
        Report { id: id.into(), sections: Vec::new() }
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    /// `section.key` lookup.
    pub fn get(&self, path: &str) -> Option<&str> {
        let (s, k) = path.split_once('.')?;
        self.section(s)?.get(k)
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instance = {}", self.id)?;
        for s in &self.sections {
            for (k, v) in &s.entries {
                writeln!(f, "{}.{} = {}", s.name, k, v)?;
            }
        }
        Ok(())
    }
}

pub fn faces(fs: &[Face]) -> String {
    let parts: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
    format!("[{}]", parts.join(" "))
}

pub fn ints<T: Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn form(f: &SupportForm) -> String {
    ints(&f.0)
}

pub fn forms(fs: &[SupportForm]) -> String {
    let parts: Vec<String> = fs.iter().map(form).collect();
    format!("[{}]", parts.join(" "))
}

pub fn point(p: &LatticePoint) -> String {
    ints(&p.0)
}

/// Nested lists: a leaf is `[facets]`, a node is `[v del lk]`.
pub fn tree(t: &SheddingTree) -> String {
    match t {
        SheddingTree::Leaf(cx) => faces(cx.facets()),
        SheddingTree::Node { vertex, deletion, link, .. } => format!("[{vertex} {} {}]", tree(deletion), tree(link)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_in_insertion_order() {
        let mut r = Report::new("k3");
        let mut s = Section::new("cone");
        s.put("facets", 4).put("forms", forms(&[SupportForm(vec![-1, 0, 1])]));
        r.sections.push(s);
        assert_eq!(r.to_string(), "instance = k3\ncone.facets = 4\ncone.forms = [(-1,0,1)]\n");
        assert_eq!(r.get("cone.facets"), Some("4"));
        assert_eq!(r.get("cone.missing"), None);
    }
}
