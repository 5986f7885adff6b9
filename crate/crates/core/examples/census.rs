use std::time::Instant;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let t = Instant::now();
    let all = biquandle::enumerate(n);
    println!("order {n}: {} biquandles in {:.2?}", all.len(), t.elapsed());
}
