use std::fmt;
use std::str::FromStr;

/// Inclusive integer set written as `2`, `1..4` or `2,3,5..6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRange {
    values: Vec<usize>,
    text: String,
}

impl IntRange {
    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut values = Vec::new();
        for piece in s.split(',').map(str::trim) {
            if piece.is_empty() {
                return Err(format!("empty element in range '{s}'"));
            }
            if let Some((a, b)) = piece.split_once("..") {
                let b = b.strip_prefix('=').unwrap_or(b);
                let lo: usize = a
                    .trim()
                    .parse()
                    .map_err(|_| format!("invalid bound '{a}' in '{s}'"))?;
                let hi: usize = b
                    .trim()
                    .parse()
                    .map_err(|_| format!("invalid bound '{b}' in '{s}'"))?;
                if lo > hi {
                    return Err(format!("range '{piece}' is empty"));
                }
                values.extend(lo..=hi);
            } else {
                values.push(
                    piece
                        .parse()
                        .map_err(|_| format!("invalid integer '{piece}'"))?,
                );
            }
        }
        values.sort_unstable();
        values.dedup();
        if values.is_empty() {
            return Err(format!("range '{s}' is empty"));
        }
        Ok(Self {
            values,
            text: s.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!("2".parse::<IntRange>().unwrap().values(), &[2]);
        assert_eq!("1..4".parse::<IntRange>().unwrap().values(), &[1, 2, 3, 4]);
        assert_eq!("1..=2".parse::<IntRange>().unwrap().values(), &[1, 2]);
        assert_eq!("3,1..2,3".parse::<IntRange>().unwrap().values(), &[1, 2, 3]);
    }

    #[test]
    fn rejects_empty_and_garbage() {
        assert!("3..2".parse::<IntRange>().is_err());
        assert!("".parse::<IntRange>().is_err());
        assert!("a".parse::<IntRange>().is_err());
        assert!("1,,2".parse::<IntRange>().is_err());
    }
}
