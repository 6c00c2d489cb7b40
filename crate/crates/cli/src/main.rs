fn main() {
    println!("negglue");
}
