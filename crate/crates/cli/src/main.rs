fn main() { println!("merostat"); }
