//! Order-preserving data-parallel helpers. With the `parallel` feature the
//! work is spread over the rayon pool; without it the same code runs on
//! plain iterators. Results always come back in input order.

use crate::error::Result;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub fn try_map<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// The items satisfying `pred`, in input order; the first error wins.
pub fn try_filter<T, F>(items: &[T], pred: F) -> Result<Vec<T>>
where
    T: Sync + Send + Clone,
    F: Fn(&T) -> Result<bool> + Sync + Send,
{
    let keep = try_map(items, |x| pred(x).map(|k| k.then(|| x.clone())))?;
    Ok(keep.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v: Vec<u32> = (0..1000).collect();
        assert_eq!(
            map(&v, |x| x * 2),
            v.iter().map(|x| x * 2).collect::<Vec<_>>()
        );
        let odd = try_filter(&v, |x| Ok(x % 2 == 1)).unwrap();
        assert_eq!(odd.len(), 500);
        assert!(odd.windows(2).all(|w| w[0] < w[1]));
    }
}
