//! Lyndon word machinery: recognition, enumeration by loop degree,
//! standard factorization, and the bracketing that turns a Lyndon word
//! into an iterated Lie bracket.
//!
//!     cargo run --example lyndon_words

use pontryagin::lyndon::{bracketing, is_lyndon, lyndon_words, standard_factorization};
use pontryagin::word::{Alphabet, Word};

fn main() {
    // two degree-1 letters: counts follow the necklace formula 2,1,2,3,6,...
    let two = Alphabet::new(vec![1, 1]).unwrap();
    let counts: Vec<usize> = (1..=8).map(|m| lyndon_words(&two, m).len()).collect();
    println!("Lyndon counts over two letters, lengths 1..8: {counts:?}");

    // mixed degrees: only increasing pairs survive in degree 5
    let mixed = Alphabet::new(vec![2, 2, 3, 3]).unwrap();
    let deg5: Vec<String> = lyndon_words(&mixed, 5)
        .iter()
        .map(render)
        .collect();
    println!("degree-5 Lyndon words over degrees [2,2,3,3]: {deg5:?}");

    // the classic degree-6 witness over three letters
    let three = Alphabet::new(vec![1, 1, 1]).unwrap();
    let witness = Word::new(vec![0, 1, 0, 1, 0, 2]);
    println!(
        "{} is Lyndon under 1<2<3: {}",
        render(&witness),
        is_lyndon(&witness, &three).unwrap()
    );

    for letters in [vec![0, 1], vec![0, 0, 1], vec![0, 1, 0, 2]] {
        let w = Word::new(letters);
        let (l1, l2) = standard_factorization(&w, &three).unwrap();
        let b = bracketing(&w, &three).unwrap();
        println!(
            "standard factorization {} = {} | {}   bracket {}",
            render(&w),
            render(&l1),
            render(&l2),
            b
        );
    }
}

fn render(w: &Word) -> String {
    w.display_indices().iter().map(u32::to_string).collect()
}
