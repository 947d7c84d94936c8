//! P_{k,Δ} lies in the +1 eigenspace of W_{k,k}; the group relations and the
//! action of words on polynomials.

use hermitia::forms::expand_p;
use hermitia::polyspace::{act_word, membership, relation_check, wkk, GroupWord, Presentation};
use hermitia::Field;

fn main() -> hermitia::Result<()> {
    for f in Field::ALL {
        println!("d = {:>2}: relations hold: {}", f.d(), relation_check(f));
    }
    for f in Field::ALL {
        let delta = hermitia::field::smallest_non_norms(f, 1)[0];
        for k in [1, 3, 5] {
            let p = expand_p(k, delta, f)?;
            let (inside, tag) = membership(&p, f);
            println!("d = {:>2}, P_{{{k},{delta}}} ∈ W: {inside}, eigenvalue {}", f.d(), tag.unwrap_or_default());
        }
    }

    let f = Field::D1;
    let pres = Presentation::new(f);
    let p = expand_p(3, 3, f)?;
    for word in pres.kernel_words() {
        println!("P_{{3,3}} | ({word}) = {}", act_word(&p, &pres, &word)?);
    }
    let w = GroupWord::parse("1 + S")?;
    println!("P_{{3,3}} | ({w}) = {}", act_word(&p, &pres, &w)?);

    let r = wkk(f, 5)?;
    for b in &r.basis {
        println!("W_{{5,5}} basis: {b}");
    }
    Ok(())
}
