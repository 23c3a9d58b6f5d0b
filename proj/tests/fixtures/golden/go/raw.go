package main

var q = `raw string with /* markers */
and // more markers`

/*
Package doc in block form.
*/
var x = 1 /* inline */ + 2 // trailing
