use crate::error::Result;
use crate::BinaryImage;

fn overlap(a: &BinaryImage, b: &BinaryImage) -> Result<(usize, usize, usize)> {
    a.check_same_dims(b)?;
    let (mut inter, mut na, mut nb) = (0, 0, 0);
    for (&x, &y) in a.data().iter().zip(b.data()) {
        inter += usize::from(x && y);
        na += usize::from(x);
        nb += usize::from(y);
    }
    Ok((inter, na, nb))
}

/// `2|A∩B| / (|A| + |B|)`, or 1 when both masks are empty.
pub fn dice(a: &BinaryImage, b: &BinaryImage) -> Result<f64> {
    let (inter, na, nb) = overlap(a, b)?;
    if na + nb == 0 {
        return Ok(1.0);
    }
    Ok(2.0 * inter as f64 / (na + nb) as f64)
}

/// `|A∩B| / |A∪B|`, or 1 when both masks are empty.
pub fn jaccard(a: &BinaryImage, b: &BinaryImage) -> Result<f64> {
    let (inter, na, nb) = overlap(a, b)?;
    let union = na + nb - inter;
    if union == 0 {
        return Ok(1.0);
    }
    Ok(inter as f64 / union as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::Image;
    use proptest::prelude::*;

    fn mask(bits: &[u8]) -> BinaryImage {
        Image::new(bits.len(), 1, bits.iter().map(|&b| b == 1).collect()).unwrap()
    }

    #[test]
    fn closed_forms() {
        let a = mask(&[1, 1, 1, 1, 0, 0, 0, 0]);
        assert_eq!(dice(&a, &a).unwrap(), 1.0);
        assert_eq!(jaccard(&a, &a).unwrap(), 1.0);
        let b = mask(&[0, 0, 0, 0, 1, 1, 1, 1]);
        assert_eq!(dice(&a, &b).unwrap(), 0.0);
        let c = mask(&[0, 0, 1, 1, 1, 1, 0, 0]);
        assert_eq!(dice(&a, &c).unwrap(), 0.5);
        assert!((jaccard(&a, &c).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let empty = mask(&[0, 0, 0]);
        assert_eq!(dice(&empty, &empty).unwrap(), 1.0);
        assert_eq!(jaccard(&empty, &empty).unwrap(), 1.0);
    }

    #[test]
    fn dimension_mismatch() {
        let a = mask(&[1, 0]);
        let b = mask(&[1, 0, 1]);
        assert!(matches!(dice(&a, &b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(
            jaccard(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    proptest! {
        #[test]
        fn metric_identities(
            (a, b) in (1usize..40).prop_flat_map(|n| (
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec(any::<bool>(), n),
            ))
        ) {
            let n = a.len();
            let a = Image::new(n, 1, a).unwrap();
            let b = Image::new(n, 1, b).unwrap();
            let d = dice(&a, &b).unwrap();
            let j = jaccard(&a, &b).unwrap();
            prop_assert!((0.0..=1.0).contains(&d) && (0.0..=1.0).contains(&j));
            prop_assert_eq!(d, dice(&b, &a).unwrap());
            prop_assert_eq!(j, jaccard(&b, &a).unwrap());
            prop_assert!((d - 2.0 * j / (1.0 + j)).abs() < 1e-12);
        }
    }
}
