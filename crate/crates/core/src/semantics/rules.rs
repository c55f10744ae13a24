//! Inference rules and their plain-text format.

use std::fmt;

use crate::model::vocab::{rdf, RDFS_NS, RDF_NS, XSD_NS};
use crate::model::{BlankNode, Iri, Term};

/// The rule file shipped with the crate: the RDF and RDFS tables.
pub const STANDARD_RULES: &str = include_str!("../../rules/rdfs.rules");

/// Entailment regimes, ordered by strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime {
    Simple,
    Rdf,
    Rdfs,
}

impl Regime {
    pub const ALL: [Regime; 3] = [Regime::Simple, Regime::Rdf, Regime::Rdfs];

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "simple" => Some(Regime::Simple),
            "rdf" => Some(Regime::Rdf),
            "rdfs" => Some(Regime::Rdfs),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::Simple => "simple",
            Regime::Rdf => "rdf",
            Regime::Rdfs => "rdfs",
        }
    }

    /// Whether a rule with this id belongs to the regime's table.
    fn includes(self, id: &str) -> bool {
        match self {
            Regime::Simple => false,
            Regime::Rdf => id.starts_with("rdf") && !id.starts_with("rdfs"),
            Regime::Rdfs => true,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One position of a triple pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slot {
    Var(usize),
    Const(Term),
    /// Body only: a literal bound to `literal` whose datatype IRI is bound
    /// to `datatype`.
    TypedLiteral { literal: usize, datatype: usize },
    /// Head only: the surrogate blank node of the body's literal.
    Surrogate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub subject: Slot,
    pub predicate: Slot,
    pub object: Slot,
}

impl Pattern {
    pub fn slots(&self) -> [&Slot; 3] {
        [&self.subject, &self.predicate, &self.object]
    }
}

/// A rule `body => head`. Invariant: every head variable is bound by a
/// body pattern or a generator, and a surrogate slot only appears when the
/// body matches a typed literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    id: String,
    vars: Vec<String>,
    body: Vec<Pattern>,
    /// Variables that must be bound to a recognized datatype IRI.
    recognized: Vec<usize>,
    /// Variables that range over every recognized datatype IRI.
    generators: Vec<usize>,
    head: Vec<Pattern>,
    surrogate_source: Option<usize>,
}

impl Rule {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn body(&self) -> &[Pattern] {
        &self.body
    }

    pub fn head(&self) -> &[Pattern] {
        &self.head
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    pub fn var_name(&self, v: usize) -> &str {
        &self.vars[v]
    }

    pub fn recognized(&self) -> &[usize] {
        &self.recognized
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// The variable holding the literal a surrogate stands for.
    pub fn surrogate_source(&self) -> Option<usize> {
        self.surrogate_source
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slot = |s: &Slot| match s {
            Slot::Var(v) => format!("?{}", self.vars[*v]),
            Slot::Const(Term::Iri(i)) if *i == rdf::type_() => "a".to_owned(),
            Slot::Const(t) => t.to_string(),
            Slot::TypedLiteral { literal, datatype } => {
                format!("?{}^^?{}", self.vars[*literal], self.vars[*datatype])
            }
            Slot::Surrogate => "_:n".to_owned(),
        };
        let patterns = |ps: &[Pattern]| {
            ps.iter()
                .map(|p| format!("{} {} {} .", slot(&p.subject), slot(&p.predicate), slot(&p.object)))
                .collect::<Vec<_>>()
        };
        let mut body = Vec::new();
        for g in &self.generators {
            body.push(format!("any IRI ?{} ∈ D .", self.vars[*g]));
        }
        body.extend(patterns(&self.body));
        for r in &self.recognized {
            body.push(format!("?{} ∈ D .", self.vars[*r]));
        }
        write!(f, "{} {} => {}", self.id, body.join(" "), patterns(&self.head).join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("rule file line {line}: {kind}")]
pub struct RuleParseError {
    pub line: usize,
    pub kind: RuleErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleErrorKind {
    #[error("missing '=>'")]
    MissingArrow,
    #[error("item not ended by '.'")]
    UnterminatedItem,
    #[error("unrecognized item {0:?}")]
    BadItem(String),
    #[error("unrecognized term {0:?}")]
    BadTerm(String),
    #[error("head variable ?{0} is not bound by the body")]
    UnboundHeadVariable(String),
    #[error("typed-literal pattern outside a body object")]
    MisplacedTypedLiteral,
    #[error("surrogate blank node without a body literal")]
    MisplacedSurrogate,
    #[error("duplicate rule id {0:?}")]
    DuplicateId(String),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Body,
    Head,
}

struct RuleBuilder {
    vars: Vec<String>,
}

impl RuleBuilder {
    fn var(&mut self, name: &str) -> usize {
        match self.vars.iter().position(|v| v == name) {
            Some(k) => k,
            None => {
                self.vars.push(name.to_owned());
                self.vars.len() - 1
            }
        }
    }

    fn var_token(&mut self, token: &str) -> Result<usize, RuleErrorKind> {
        match token.strip_prefix('?') {
            Some(name) if !name.is_empty() && name.chars().all(|c| c.is_alphanumeric() || c == '_') => {
                Ok(self.var(name))
            }
            _ => Err(RuleErrorKind::BadTerm(token.to_owned())),
        }
    }

    fn slot(&mut self, token: &str) -> Result<Slot, RuleErrorKind> {
        if let Some((lit, dt)) = token.split_once("^^") {
            let literal = self.var_token(lit)?;
            let datatype = self.var_token(dt)?;
            return Ok(Slot::TypedLiteral { literal, datatype });
        }
        if token.starts_with('?') {
            return self.var_token(token).map(Slot::Var);
        }
        if let Some(label) = token.strip_prefix("_:") {
            BlankNode::new(label).map_err(|_| RuleErrorKind::BadTerm(token.to_owned()))?;
            return Ok(Slot::Surrogate);
        }
        if token == "a" {
            return Ok(Slot::Const(Term::Iri(rdf::type_())));
        }
        let iri = if let Some(inner) = token.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
            inner.to_owned()
        } else {
            let (prefix, local) = token
                .split_once(':')
                .ok_or_else(|| RuleErrorKind::BadTerm(token.to_owned()))?;
            let ns = match prefix {
                "rdf" => RDF_NS,
                "rdfs" => RDFS_NS,
                "xsd" => XSD_NS,
                _ => return Err(RuleErrorKind::BadTerm(token.to_owned())),
            };
            format!("{ns}{local}")
        };
        Iri::new(iri)
            .map(|i| Slot::Const(Term::Iri(i)))
            .map_err(|_| RuleErrorKind::BadTerm(token.to_owned()))
    }

    fn pattern(&mut self, item: &[&str], side: Side) -> Result<Pattern, RuleErrorKind> {
        let [s, p, o] = item else {
            return Err(RuleErrorKind::BadItem(item.join(" ")));
        };
        let pattern = Pattern {
            subject: self.slot(s)?,
            predicate: self.slot(p)?,
            object: self.slot(o)?,
        };
        let typed = |s: &Slot| matches!(s, Slot::TypedLiteral { .. });
        if typed(&pattern.subject) || typed(&pattern.predicate) || (side == Side::Head && typed(&pattern.object)) {
            return Err(RuleErrorKind::MisplacedTypedLiteral);
        }
        if side == Side::Body && pattern.slots().iter().any(|s| **s == Slot::Surrogate) {
            return Err(RuleErrorKind::MisplacedSurrogate);
        }
        if pattern.predicate == Slot::Surrogate {
            return Err(RuleErrorKind::MisplacedSurrogate);
        }
        Ok(pattern)
    }
}

fn is_member_sign(token: &str) -> bool {
    token == "∈" || token == "in"
}

fn split_items<'a>(tokens: &[&'a str]) -> Result<Vec<Vec<&'a str>>, RuleErrorKind> {
    let mut items = Vec::new();
    let mut current = Vec::new();
    for &t in tokens {
        if t == "." {
            items.push(std::mem::take(&mut current));
        } else {
            current.push(t);
        }
    }
    if !current.is_empty() {
        return Err(RuleErrorKind::UnterminatedItem);
    }
    Ok(items)
}

/// Parses one rule line: `id body => head`.
pub fn parse_rule(line: &str) -> Result<Rule, RuleErrorKind> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    let arrow = tokens.iter().position(|t| *t == "=>").ok_or(RuleErrorKind::MissingArrow)?;
    let Some((&id, body_tokens)) = tokens[..arrow].split_first() else {
        return Err(RuleErrorKind::BadItem(line.to_owned()));
    };
    let mut b = RuleBuilder { vars: Vec::new() };
    let mut body = Vec::new();
    let mut recognized = Vec::new();
    let mut generators = Vec::new();
    for item in split_items(body_tokens)? {
        match item.as_slice() {
            ["any", "IRI", v, m, "D"] if is_member_sign(m) => generators.push(b.var_token(v)?),
            [v, m, "D"] if is_member_sign(m) => recognized.push(b.var_token(v)?),
            _ => body.push(b.pattern(&item, Side::Body)?),
        }
    }
    let bound = b.vars.len();
    let mut head = Vec::new();
    for item in split_items(&tokens[arrow + 1..])? {
        head.push(b.pattern(&item, Side::Head)?);
    }
    if let Some(v) = (bound..b.vars.len()).next() {
        return Err(RuleErrorKind::UnboundHeadVariable(b.vars[v].clone()));
    }
    let literals: Vec<usize> = body
        .iter()
        .filter_map(|p| match p.object {
            Slot::TypedLiteral { literal, .. } => Some(literal),
            _ => None,
        })
        .collect();
    let uses_surrogate = head.iter().any(|p| p.slots().iter().any(|s| **s == Slot::Surrogate));
    let surrogate_source = match (uses_surrogate, literals.as_slice()) {
        (false, _) => None,
        (true, [l]) => Some(*l),
        (true, _) => return Err(RuleErrorKind::MisplacedSurrogate),
    };
    Ok(Rule {
        id: id.to_owned(),
        vars: b.vars,
        body,
        recognized,
        generators,
        head,
        surrogate_source,
    })
}

/// An ordered list of rules for one regime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    rules: Vec<Rule>,
    regime: Regime,
}

impl RuleSet {
    /// Every rule of `text`; blank lines and `#` comments are skipped.
    pub fn parse(text: &str, regime: Regime) -> Result<Self, RuleParseError> {
        let mut rules: Vec<Rule> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split_once('#').map_or(raw, |(l, _)| l).trim();
            if line.is_empty() {
                continue;
            }
            let err = |kind| RuleParseError { line: k + 1, kind };
            let rule = parse_rule(line).map_err(err)?;
            if rules.iter().any(|r| r.id == rule.id) {
                return Err(err(RuleErrorKind::DuplicateId(rule.id)));
            }
            rules.push(rule);
        }
        Ok(RuleSet { rules, regime })
    }

    /// The shipped table restricted to `regime`: rdf1 and rdf2 for RDF, all
    /// sixteen rows for RDFS, nothing for simple entailment.
    pub fn standard(regime: Regime) -> Self {
        let all = RuleSet::parse(STANDARD_RULES, regime).expect("shipped rule file parses");
        RuleSet {
            rules: all.rules.into_iter().filter(|r| regime.includes(&r.id)).collect(),
            regime,
        }
    }

    pub fn rdf() -> Self {
        Self::standard(Regime::Rdf)
    }

    pub fn rdfs() -> Self {
        Self::standard(Regime::Rdfs)
    }

    /// The same regime restricted to the rules accepted by `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&Rule) -> bool) -> Self {
        RuleSet {
            rules: self.rules.iter().filter(|r| keep(r)).cloned().collect(),
            regime: self.regime,
        }
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn get(&self, id: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.id == id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> + '_ {
        self.rules.iter().map(|r| r.id.as_str())
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}
