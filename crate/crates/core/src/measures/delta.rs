use crate::error::Result;
use crate::factor::nonempty;
use crate::index::SuffixArray;
use crate::text::SymbolString;
use crate::Rational;

/// Substring complexity: the maximum over `k` of `d_k / k`, where `d_k`
/// counts distinct substrings of length `k`. Exact.
pub fn delta(text: &SymbolString) -> Result<Rational> {
    nonempty(text, "delta")?;
    let idx = SuffixArray::new(text.as_slice());
    let best = (1..=text.len())
        .map(|k| Rational::new(idx.distinct_of_length(k) as i64, k as i64))
        .max()
        .expect("n >= 1");
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(delta(&SymbolString::new(vec![0; 4])).unwrap(), Rational::from_integer(1));
        assert_eq!(delta(&SymbolString::new(vec![0, 1, 0, 1])).unwrap(), Rational::from_integer(2));
        assert_eq!(delta(&SymbolString::new(vec![0, 1, 2])).unwrap(), Rational::from_integer(3));
        assert!(delta(&SymbolString::default()).is_err());
    }

    #[test]
    fn can_be_fractional() {
        // d_3 = 8: aaa aab abb bbb bba bab aba baa
        let t = SymbolString::from("aaabbbabaa");
        assert_eq!(delta(&t).unwrap(), Rational::new(8, 3));
    }
}
