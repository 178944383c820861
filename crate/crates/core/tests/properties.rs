use proptest::prelude::*;

use stirmix_core::bounded::stirling_bounded;
use stirmix_core::exact::{binomial, multinomial};
use stirmix_core::mixed::{mixed_count, mixed_count_collapsed, mixed_count_convolution};
use stirmix_core::{CellSpec, SizeBand};

fn band() -> impl Strategy<Value = SizeBand> {
    (1usize..4, prop::option::of(0usize..4))
        .prop_map(|(lo, extra)| SizeBand::new(lo, extra.map(|e| lo + e)).unwrap())
}

proptest! {
    #[test]
    fn binomial_symmetry(n in 0usize..60, k in 0usize..60) {
        prop_assume!(k <= n);
        prop_assert_eq!(binomial(n, k), binomial(n, n - k));
        prop_assert_eq!(multinomial(n, &[k, n - k]).unwrap(), binomial(n, k));
    }

    #[test]
    fn label_order_is_irrelevant(
        counts in prop::collection::vec(0usize..3, 1..4),
        n in 0usize..10,
        band in band(),
        seed in any::<u64>(),
    ) {
        prop_assume!(counts.iter().sum::<usize>() > 0);
        let spec = CellSpec::strict(counts.clone()).unwrap();
        let base = mixed_count(n, &spec, band).unwrap();
        let mut permuted = counts.clone();
        let len = permuted.len();
        permuted.rotate_left((seed as usize) % len);
        permuted.reverse();
        let spec = CellSpec::strict(permuted).unwrap();
        prop_assert_eq!(mixed_count(n, &spec, band).unwrap(), base);
    }

    #[test]
    fn collapsed_form_equals_convolution(
        counts in prop::collection::vec(0usize..4, 1..5),
        n in 0usize..13,
        band in band(),
    ) {
        let total: usize = counts.iter().sum();
        let collapsed = mixed_count_collapsed(n, &counts, band);
        prop_assert_eq!(&collapsed, &mixed_count_convolution(n, &counts, band));
        let expected = multinomial(total, &counts).unwrap() * stirling_bounded(n, total, band);
        prop_assert_eq!(collapsed, expected);
    }
}
