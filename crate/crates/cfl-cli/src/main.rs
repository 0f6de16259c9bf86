fn main() {
    println!("cfl: placeholder");
}
