use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{NodeId, NodeSpace, Sym};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("empty feature path")]
    Empty,
    #[error("invalid feature name `{0}`")]
    BadFeature(String),
}

/// True for names made of letters, digits and underscores that start with a letter.
pub fn is_feature_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A non-empty sequence of feature names, written `agr.num`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FeaturePath(Vec<Sym>);

impl FeaturePath {
    pub fn new<I, S>(segments: I) -> Result<Self, PathError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let segments: Vec<Sym> = segments
            .into_iter()
            .map(|s| {
                let s = s.as_ref();
                if is_feature_name(s) {
                    Ok(Sym::from(s))
                } else {
                    Err(PathError::BadFeature(s.to_string()))
                }
            })
            .collect::<Result<_, _>>()?;
        if segments.is_empty() {
            return Err(PathError::Empty);
        }
        Ok(FeaturePath(segments))
    }

    pub fn segments(&self) -> impl Iterator<Item = &str> + '_ {
        self.0.iter().map(|s| &**s)
    }

    fn split_last(&self) -> (&[Sym], &str) {
        let (last, prefix) = self.0.split_last().expect("paths are non-empty");
        (prefix, last)
    }
}

impl FromStr for FeaturePath {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PathError::Empty);
        }
        FeaturePath::new(s.split('.').map(str::trim))
    }
}

impl fmt::Display for FeaturePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, seg) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(seg)?;
        }
        Ok(())
    }
}

/// A negative restrictor: the set of paths discarded from categories.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Restrictor {
    paths: BTreeSet<FeaturePath>,
}

impl Restrictor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, path: FeaturePath) -> bool {
        self.paths.insert(path)
    }

    pub fn paths(&self) -> impl Iterator<Item = &FeaturePath> + '_ {
        self.paths.iter()
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

impl FromIterator<FeaturePath> for Restrictor {
    fn from_iter<T: IntoIterator<Item = FeaturePath>>(iter: T) -> Self {
        Restrictor {
            paths: iter.into_iter().collect(),
        }
    }
}

/// Comma-separated paths; the empty string is the empty restrictor.
impl FromStr for Restrictor {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(Restrictor::new());
        }
        s.split(',').map(str::parse).collect()
    }
}

impl fmt::Display for Restrictor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.paths.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Copies `roots` out of `space` with every restrictor path removed.
///
/// Arcs to delete are located on the unrestricted graph first, so the
/// outcome does not depend on path order. A deletion at a shared node is
/// seen through every path that reaches it.
pub(crate) fn restrict_roots(
    space: &NodeSpace,
    roots: &[NodeId],
    phi: &Restrictor,
) -> (NodeSpace, Vec<NodeId>) {
    let (mut copy, roots) = space.extract(roots);
    if phi.is_empty() {
        return (copy, roots);
    }
    let mut doomed: Vec<(NodeId, &str)> = Vec::new();
    for path in phi.paths() {
        let (prefix, last) = path.split_last();
        for &root in &roots {
            if let Some(node) = copy.resolve(root, prefix.iter().map(|s| &**s)) {
                doomed.push((node, last));
            }
        }
    }
    for (node, feature) in doomed {
        copy.remove_arc(node, feature);
    }
    copy.extract(&roots)
}
