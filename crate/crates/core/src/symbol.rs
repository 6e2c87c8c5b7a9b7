use std::collections::HashMap;

use crate::error::{Error, Result};

/// Handle to a registered indeterminate. Ids are dense and follow
/// registration order; id 0 is the most significant variable in the
/// monomial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(pub u16);

impl Symbol {
    pub fn id(self) -> usize {
        self.0 as usize
    }
}

/// Registry of symbol names. Polynomials store only ids, so a table is
/// needed only to parse and print.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
    index: HashMap<String, Symbol>,
}

pub fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut t = Self::new();
        for n in names {
            t.register(n.as_ref())?;
        }
        Ok(t)
    }

    /// Registers a new name; fails on duplicates.
    pub fn register(&mut self, name: &str) -> Result<Symbol> {
        if !valid_name(name) {
            return Err(Error::InvalidSymbolName(name.to_string()));
        }
        if self.index.contains_key(name) {
            return Err(Error::DuplicateSymbol(name.to_string()));
        }
        if self.names.len() >= u16::MAX as usize {
            return Err(Error::InvalidSymbolName(format!("{name} (table full)")));
        }
        let s = Symbol(self.names.len() as u16);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), s);
        Ok(s)
    }

    /// Returns the existing symbol or registers it.
    pub fn intern(&mut self, name: &str) -> Result<Symbol> {
        match self.index.get(name) {
            Some(&s) => Ok(s),
            None => self.register(name),
        }
    }

    pub fn get(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<Symbol> {
        self.get(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn name(&self, s: Symbol) -> &str {
        self.names
            .get(s.id())
            .map(String::as_str)
            .unwrap_or("?")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len()).map(|i| Symbol(i as u16))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_ids_in_order() {
        let t = SymbolTable::with_names(["x", "y", "lam_u"]).unwrap();
        assert_eq!(t.lookup("x").unwrap(), Symbol(0));
        assert_eq!(t.lookup("lam_u").unwrap(), Symbol(2));
        assert_eq!(t.name(Symbol(1)), "y");
    }

    #[test]
    fn rejects_bad_and_duplicate_names() {
        let mut t = SymbolTable::new();
        assert!(t.register("1x").is_err());
        assert!(t.register("a-b").is_err());
        t.register("a").unwrap();
        assert_eq!(t.register("a"), Err(Error::DuplicateSymbol("a".into())));
        assert_eq!(t.intern("a").unwrap(), Symbol(0));
    }
}
