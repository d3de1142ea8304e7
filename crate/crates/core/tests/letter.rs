use fishery_core::{render_letter, DEFAULT_SENDER};

const GOLDEN: &str = "Dear Ada, I was conducting a field study on Carp the other day, and I discovered that the population is in decline. To prevent a fishery collapse, please release any large Carp you catch until the population is stable again. -Demetrius";

#[test]
fn letter_is_byte_exact() {
    assert_eq!(render_letter("Ada", "Carp", DEFAULT_SENDER), GOLDEN);
    assert_eq!(render_letter("Ada", "Carp", DEFAULT_SENDER).as_bytes(), GOLDEN.as_bytes());
}

#[test]
fn names_with_spaces_are_not_escaped() {
    let body = render_letter("Mx. Lee", "Largemouth Bass", "Demetrius");
    assert_eq!(
        body,
        "Dear Mx. Lee, I was conducting a field study on Largemouth Bass the other day, and I discovered \
         that the population is in decline. To prevent a fishery collapse, please release any large \
         Largemouth Bass you catch until the population is stable again. -Demetrius"
    );
}
