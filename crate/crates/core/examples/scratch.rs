use palinfix::{generators::*, psi::*, LetterSequence};
fn main() {
    for n in 2..=6 {
        let spec = near_sqrt3_psi(n).unwrap();
        let d = spec.first_letters(4000).unwrap();
        let per = if n % 2 == 1 { 4 * n + 1 } else { 2 * (4 * n + 1) };
        let epi = episturmian_psi(&LetterSequence::periodic(d[..per].to_vec()).unwrap());
        let i = (3..400).find(|&i| spec.psi_value(i).unwrap() != epi.psi_value(i).unwrap());
        let len = 2_000_000;
        let a = word_from_psi(&spec, len).unwrap().prefix(len).unwrap();
        let b = word_from_psi(&epi, len).unwrap().prefix(len).unwrap();
        let (a, b) = (a.render(), b.render());
        let first = a.bytes().zip(b.bytes()).position(|(x, y)| x != y);
        let prof = palinfix::lengths::length_sequence(&spec, 40).unwrap().small_lengths();
        println!("n={n} psi differs at {i:?} word differs at {first:?} lengths {:?}", &prof[..prof.len().min(30)]);
    }
}
