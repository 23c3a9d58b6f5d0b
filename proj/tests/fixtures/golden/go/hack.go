package main

// hack: retry until the server answers
func main() {
	s := "// not a comment"
	r := '/' // rune literal then comment
}
