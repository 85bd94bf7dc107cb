//! Element text: `layer:g` for `(u, g)` and `layer:d:g` for the dotted `(u, ġ)`.

use super::{Chain, ChainElement};
use crate::error::{Error, Result};

impl Chain {
    pub fn parse_element(&self, text: &str) -> Result<ChainElement> {
        let text = text.trim();
        let (layer, rest) = text
            .split_once(':')
            .ok_or_else(|| Error::parse_msg(format!("`{text}` is not of the form layer:g or layer:d:g")))?;
        let (dotted, g) = match rest.strip_prefix("d:") {
            Some(g) => (true, g),
            None => (false, rest),
        };
        let u = self.bunch.index_of(layer)?;
        let g = self.bunch.group(u).parse_elem(g)?;
        let x = ChainElement::new(u, g, dotted);
        self.check_element(&x)?;
        Ok(x)
    }

    pub fn format_element(&self, x: &ChainElement) -> String {
        let name = &self.bunch.layer(x.layer).name;
        if x.dotted {
            format!("{name}:d:{}", x.g)
        } else {
            format!("{name}:{}", x.g)
        }
    }
}
