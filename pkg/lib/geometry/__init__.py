"""Phase spaces, compatible complex structures and the symmetric spaces they form."""
