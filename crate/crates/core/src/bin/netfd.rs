fn main() {
    // placeholder until the experiment runner lands
}
