use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// ChaCha8 word stream used for search draws; blow-up sampling uses stream 0.
const SEARCH_STREAM: u64 = 1;

#[derive(Clone, Debug)]
enum Source {
    Explicit { values: Vec<usize>, pos: usize },
    Seeded { rng: Box<ChaCha8Rng> },
}

/// A sequence of integers in `1..=n`, either given explicitly or drawn
/// uniformly from `ChaCha8Rng::seed_from_u64(seed)` on word stream 1 via
/// `gen_range(1..=n)`. Every value handed out is remembered.
#[derive(Clone, Debug)]
pub struct IntegerStream {
    n: usize,
    source: Source,
    drawn: Vec<usize>,
}

impl IntegerStream {
    pub fn explicit(n: usize, values: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("stream range must be non-empty".into()));
        }
        if let Some(bad) = values.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::Precondition(format!(
                "stream value {bad} outside 1..={n}"
            )));
        }
        Ok(IntegerStream {
            n,
            source: Source::Explicit { values, pos: 0 },
            drawn: Vec::new(),
        })
    }

    pub fn seeded(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("stream range must be non-empty".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(SEARCH_STREAM);
        Ok(IntegerStream {
            n,
            source: Source::Seeded { rng: Box::new(rng) },
            drawn: Vec::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn next_value(&mut self) -> Result<usize> {
        let v = match &mut self.source {
            Source::Explicit { values, pos } => {
                let v = *values
                    .get(*pos)
                    .ok_or(Error::StreamExhausted(self.drawn.len()))?;
                *pos += 1;
                v
            }
            Source::Seeded { rng } => rng.gen_range(1..=self.n),
        };
        self.drawn.push(v);
        Ok(v)
    }

    /// Values handed out so far.
    pub fn consumed(&self) -> &[usize] {
        &self.drawn
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_runs_dry() {
        let mut z = IntegerStream::explicit(3, vec![2, 3]).unwrap();
        assert_eq!(z.next_value().unwrap(), 2);
        assert_eq!(z.next_value().unwrap(), 3);
        assert!(matches!(z.next_value(), Err(Error::StreamExhausted(2))));
        assert_eq!(z.consumed(), &[2, 3]);
        assert!(IntegerStream::explicit(3, vec![4]).is_err());
        assert!(IntegerStream::explicit(3, vec![0]).is_err());
    }

    #[test]
    fn seeded_is_reproducible_and_in_range() {
        let mut a = IntegerStream::seeded(5, 42).unwrap();
        let mut b = IntegerStream::seeded(5, 42).unwrap();
        for _ in 0..1000 {
            let v = a.next_value().unwrap();
            assert_eq!(v, b.next_value().unwrap());
            assert!((1..=5).contains(&v));
        }
        let mut c = IntegerStream::seeded(5, 43).unwrap();
        let other: Vec<usize> = (0..50).map(|_| c.next_value().unwrap()).collect();
        assert_ne!(&a.consumed()[..50], &other[..]);
    }
}
